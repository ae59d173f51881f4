#pragma once

#include <json.hpp>

#include "chromalg/classifying/classifying_ring.hpp"
#include "chromalg/linalg/ring_linalg.hpp"
#include "chromalg/ring/localization.hpp"
#include "chromalg/series/truncated_series.hpp"
#include "chromalg/tate/blueshift.hpp"
#include "chromalg/tate/tate_ring.hpp"

// JSON views of library objects. Ring coefficients are decimal strings so
// that exact values survive any JSON reader; small counts stay numbers.
namespace chromalg::io {

using json = nlohmann::json;

inline json int_string(const Integer& n) { return to_decimal(n); }

inline json group_element(const GroupElement& w) { return json(w); }

template <class R>
json series_json(const TruncatedSeries<R>& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", e}, {"coef", to_decimal(c)}});
  json out{{"vars", f.vars()}, {"cap", f.cap()}, {"exact", f.is_polynomial()}, {"terms", terms},
           {"text", f.to_string()}};
  if (f.nvars() == 1) {
    json dense = json::array();
    for (const auto& c : f.coefficients()) dense.push_back(to_decimal(c));
    out["coefficients"] = dense;
  }
  return out;
}

inline json coefficient_list(const std::vector<Integer>& c) {
  json out = json::array();
  for (const auto& v : c) out.push_back(to_decimal(v));
  return out;
}

template <class Algebra, class Elem>
json element_json(const Algebra& R, const Elem& e) {
  return R.to_string(e);
}

template <class Algebra>
json algebra_json(const Algebra& R) {
  json rels = json::array();
  for (const auto& r : R.relations()) rels.push_back(coefficient_list(r));
  json basis = json::array();
  for (std::size_t i = 0; i < R.rank(); ++i) basis.push_back(R.to_string(R.basis_element(i)));
  return {{"vars", R.vars()}, {"relations", rels}, {"rank", R.rank()}, {"basis", basis},
          {"description", R.describe()}};
}

template <class R>
json fgl_json(const FormalGroupLaw<R>& F) {
  return {{"kind", std::string(kind_name(F.kind()))},
          {"p", to_decimal(F.p())},
          {"height", F.height()},
          {"base", F.ring().describe()},
          {"cap", F.cap()}};
}

inline json blueshift_json(const BlueShiftReport& r, bool explain) {
  json out{{"p", r.p},
           {"A", r.A},
           {"C", r.C},
           {"lower_t", r.lower_t},
           {"upper_rank", r.upper_rank},
           {"argmax_j", r.argmax_j},
           {"exact", r.exact ? json(*r.exact) : json(nullptr)},
           {"exact_reason", r.exact ? json(r.exact_reason) : json(nullptr)}};
  if (explain) {
    json rows = json::array();
    for (const auto& t : r.terms)
      rows.push_back({{"j", t.j}, {"log_p_V_A", t.log_v}, {"log_p_V_image", t.log_v_image}, {"ceil", t.value}});
    out["j_scan"] = rows;
  }
  return out;
}

inline json saturation_json(const LocalizationResult& L, const FiniteAlgebra& R, bool explain) {
  json out{{"zero", L.zero}, {"steps", L.chain.size()}};
  if (L.ring) out["quotient_rank"] = L.ring->rank();
  if (explain) {
    json chain = json::array();
    for (const auto& s : L.chain) {
      json gens = json::array();
      for (const auto& g : s.generators) gens.push_back(R.to_string(g));
      chain.push_back({{"size", to_decimal(s.size)}, {"contains_one", s.contains_one}, {"generators", gens}});
    }
    out["chain"] = chain;
    out["multiplier"] = R.to_string(L.multiplier);
  }
  return out;
}

inline json vanishing_json(const VanishingReport& v, bool explain) {
  json out{{"verdict", v.verdict == Verdict::MustBeZero ? "MUST_BE_ZERO" : "INCONCLUSIVE"},
           {"case", std::string(case_name(v.which))},
           {"unit_generator", v.unit_generator},
           {"note", v.note}};
  if (v.saturation) out["saturation_zero"] = v.saturation->zero;
  if (explain && !v.generators.empty()) {
    json gens = json::array();
    for (const auto& g : v.generators) gens.push_back(g.to_string());
    out["generators"] = gens;
  }
  return out;
}

template <class Coeff>
json tate_json(const TateRingResult<Coeff>& t, bool explain) {
  const auto& R = t.classifying.ring();
  json inverted = json::array(), gens = json::array();
  for (const auto& w : t.inverted) inverted.push_back(w);
  for (const auto& g : t.generators) gens.push_back(R.to_string(g));
  json out{{"status", std::string(status_name(t.status))},
           {"level", t.level},
           {"inverted", inverted},
           {"generators", gens},
           {"classifying_rank", t.classifying.rank()},
           {"note", t.note}};
  if (t.certificate) {
    json factors = json::array(), elems = json::array();
    for (const auto& f : t.certificate->factors) factors.push_back(R.to_string(f));
    for (const auto& w : t.certificate_elements) elems.push_back(w);
    out["certificate"] = {{"length", t.certificate->length()},
                          {"elements", elems},
                          {"factors", factors},
                          {"replayed_product", R.to_string(replay_certificate(R, t.certificate->factors))}};
  } else {
    out["certificate"] = nullptr;
  }
  if constexpr (std::is_same_v<typename ClassifyingRing<Coeff>::Algebra, FiniteAlgebra>) {
    if (t.saturation) out["saturation"] = saturation_json(*t.saturation, R, explain);
  }
  return out;
}

inline json periodicity_json(const PeriodicityReport& r) {
  return {{"finite_model", std::string(status_name(r.status))},
          {"completed", std::string(status_name(r.completed))},
          {"level", r.level},
          {"height", r.height},
          {"forced_zero_levels", r.forced_zero_levels},
          {"consistent", r.consistent},
          {"notes", r.notes}};
}

}  // namespace chromalg::io
