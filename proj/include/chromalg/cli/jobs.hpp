#pragma once

#include <cstdlib>
#include <fstream>
#include <future>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <atomic>
#include <optional>

#include "chromalg/io/json.hpp"

namespace chromalg::cli {

using json = nlohmann::json;

enum ExitCode { Ok = 0, ValidationError = 2, ComputationError = 3 };

struct JobOutcome {
  int exit_code = Ok;
  json report;
};

// Raised while checking a job against its schema.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

enum class Kind { Int, Bool, String, IntList };

struct Field {
  Kind kind;
  bool required = false;
};

using Schema = std::map<std::string, Field>;

inline const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> s = [] {
    Schema fgl{{"kind", {Kind::String}},      {"p", {Kind::Int, true}}, {"n", {Kind::Int}},
               {"modulus_power", {Kind::Int}}, {"base", {Kind::String}}, {"cap", {Kind::Int}}};
    auto with = [](Schema a, Schema b) {
      a.insert(b.begin(), b.end());
      return a;
    };
    std::map<std::string, Schema> m;
    m["fgl"] = with(fgl, {{"j", {Kind::Int}}, {"m", {Kind::Int}}, {"weierstrass", {Kind::Bool}}});
    m["bgroup"] = with(fgl, {{"A", {Kind::IntList, true}}, {"euler", {Kind::Bool}}});
    m["roots"] = with(fgl, {{"A", {Kind::IntList, true}}, {"j", {Kind::Int, true}}});
    m["tate"] = with(fgl, {{"A", {Kind::IntList, true}}, {"C", {Kind::IntList, true}}, {"max_cert_len", {Kind::Int}}});
    m["vanish-cert"] = with(fgl, {{"A", {Kind::IntList, true}}, {"C", {Kind::IntList, true}}, {"j", {Kind::Int}}});
    m["blueshift"] = {{"p", {Kind::Int, true}},
                      {"A", {Kind::IntList, true}},
                      {"C", {Kind::IntList, true}},
                      {"nonabelian", {Kind::Bool}}};
    for (auto& [_, sc] : m) {
      sc["explain"] = {Kind::Bool};
      sc["output"] = {Kind::String};
    }
    return m;
  }();
  return s;
}

inline bool small_int(const json& v) {
  return v.is_number_integer() && v.get<long long>() >= -(1LL << 40) && v.get<long long>() <= (1LL << 40);
}

inline void validate(const json& job) {
  if (!job.is_object()) throw ValidationFailure("job must be a JSON object");
  if (!job.contains("command") || !job["command"].is_string())
    throw ValidationFailure("missing string field 'command'");
  const std::string cmd = job["command"];
  auto it = schemas().find(cmd);
  if (it == schemas().end()) throw ValidationFailure("unknown command '" + cmd + "'");
  const Schema& sc = it->second;
  for (const auto& [key, value] : job.items()) {
    if (key == "command") continue;
    auto f = sc.find(key);
    if (f == sc.end()) throw ValidationFailure("unknown field '" + key + "' for command " + cmd);
    bool ok = false;
    switch (f->second.kind) {
      case Kind::Int: ok = small_int(value); break;
      case Kind::Bool: ok = value.is_boolean(); break;
      case Kind::String: ok = value.is_string(); break;
      case Kind::IntList:
        ok = value.is_array();
        for (const auto& v : value) ok = ok && small_int(v);
        break;
    }
    if (!ok) throw ValidationFailure("field '" + key + "' has the wrong type");
  }
  for (const auto& [key, f] : sc)
    if (f.required && !job.contains(key)) throw ValidationFailure("missing field '" + key + "'");
  if (job.contains("kind")) {
    std::string k = job["kind"];
    if (k != "honda" && k != "multiplicative" && k != "additive")
      throw ValidationFailure("kind must be honda, multiplicative or additive");
  }
  if (job.contains("base")) {
    std::string b = job["base"];
    if (b != "modular" && b != "integers") throw ValidationFailure("base must be modular or integers");
  }
  for (const char* k : {"n", "modulus_power", "cap", "max_cert_len"})
    if (job.contains(k) && job[k].get<long long>() < 0) throw ValidationFailure(std::string(k) + " must be >= 0");
  if (job.contains("j") && job["j"].get<long long>() < 0) throw ValidationFailure("j must be >= 0");
}

template <class T>
T get_or(const json& job, const char* key, T fallback) {
  return job.contains(key) ? job[key].get<T>() : fallback;
}

struct FglParams {
  std::string kind;
  long p;
  int n;
  unsigned K;
  bool exact;
  std::optional<int> cap;
};

inline FglParams fgl_params(const json& job) {
  FglParams f;
  f.kind = get_or<std::string>(job, "kind", "honda");
  f.p = job["p"].get<long>();
  f.n = get_or<int>(job, "n", 1);
  f.K = get_or<unsigned>(job, "modulus_power", 1);
  f.exact = get_or<std::string>(job, "base", "modular") == "integers";
  if (job.contains("cap")) f.cap = job["cap"].get<int>();
  if (f.exact && f.kind == "honda") throw ValidationFailure("the Honda law is built over Z/p; base integers is not available");
  if (f.kind != "honda" && job.contains("n")) throw ValidationFailure("n applies to the Honda law only");
  if (f.exact && job.contains("modulus_power")) throw ValidationFailure("modulus_power does not apply to base integers");
  if (f.K < 1) throw ValidationFailure("modulus_power must be at least 1");
  return f;
}

inline int height_of(const FglParams& f) { return f.kind == "honda" ? f.n : f.kind == "multiplicative" ? 1 : 0; }

// Cap covering [p^top]: explicit value, else CHROMALG_CAP, else p^(height*top) + p.
inline int choose_cap(const FglParams& f, int top) {
  if (f.cap) return *f.cap;
  if (const char* env = std::getenv("CHROMALG_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0 && v < 100000) return int(v);
    throw ValidationFailure("CHROMALG_CAP must be a positive integer");
  }
  Integer need = ipow(Integer(f.p), unsigned(std::max(0, height_of(f) * std::max(top, 1))));
  if (need > 4096) throw ValidationFailure("default cap would exceed 4096; pass cap explicitly");
  return int(need.convert_to<long>()) + int(f.p);
}

inline FormalGroupLaw<ModularRing> modular_fgl(const FglParams& f, int cap) {
  Integer P(f.p);
  if (f.kind == "honda") return build_honda(P, f.n, cap);
  ModularRing R(ipow(P, f.K));
  if (f.kind == "multiplicative") return build_multiplicative(R, P, cap);
  return build_additive(R, P, cap);
}

inline FormalGroupLaw<IntegerRing> exact_fgl(const FglParams& f, int cap) {
  if (f.kind == "multiplicative") return build_multiplicative(IntegerRing{}, Integer(f.p), cap);
  return build_additive(IntegerRing{}, Integer(f.p), cap);
}

// Calls body with the formal group law over the requested base.
template <class Body>
json with_fgl(const json& job, int top, Body&& body) {
  auto f = fgl_params(job);
  int cap = choose_cap(f, top);
  if (f.exact) return body(exact_fgl(f, cap));
  return body(modular_fgl(f, cap));
}

inline int max_of(const std::vector<int>& v) {
  int m = 0;
  for (int x : v) m = std::max(m, x);
  return m;
}

inline json run_fgl(const json& job, bool explain) {
  int j = get_or<int>(job, "j", 0);
  return with_fgl(job, std::max(j, 1), [&](const auto& F) {
    json out{{"fgl", io::fgl_json(F)}, {"law", io::series_json(F.law())}};
    if (job.contains("m")) out["m_series"] = io::series_json(F.m_series(job["m"].get<long>()));
    if (j >= 1) {
      auto s = F.pj_series(j);
      out["pj_series"] = io::series_json(s);
      if (get_or<bool>(job, "weierstrass", false)) {
        if constexpr (std::is_same_v<std::decay_t<decltype(F.ring())>, ModularRing>) {
          auto w = weierstrass_prepare(s);
          out["weierstrass"] = {{"degree", w.degree}, {"g", io::coefficient_list(w.g)}, {"unit", io::series_json(w.unit)}};
        } else {
          throw ValidationFailure("weierstrass needs a modular base");
        }
      }
    } else if (get_or<bool>(job, "weierstrass", false)) {
      throw ValidationFailure("weierstrass needs j >= 1");
    }
    if (explain) {
      auto ax = F.verify_axioms();
      out["axioms"] = {{"left_unit", ax.left_unit},
                       {"right_unit", ax.right_unit},
                       {"commutative", ax.commutative},
                       {"associative", ax.associative}};
      out["inverse_series"] = io::series_json(F.inverse_series());
    }
    return out;
  });
}

template <class CR>
json euler_list(const CR& c) {
  json out = json::array();
  for (const auto& w : c.group().elements())
    out.push_back({{"w", w}, {"value", c.ring().to_string(c.euler_class(w))}});
  return out;
}

inline json run_bgroup(const json& job, bool explain) {
  auto exps = job["A"].get<std::vector<int>>();
  return with_fgl(job, max_of(exps), [&](const auto& F) {
    AbelianPGroup A(job["p"].get<long>(), exps);
    auto c = build_classifying_ring(F, A);
    json out{{"fgl", io::fgl_json(F)},
             {"group", {{"p", A.p()}, {"exponents", exps}, {"order", io::int_string(A.order())}}},
             {"ring", io::algebra_json(c.ring())},
             {"model", c.polynomial_model() ? "polynomial" : "weierstrass"}};
    if (get_or<bool>(job, "euler", false) || explain) out["euler_classes"] = euler_list(c);
    return out;
  });
}

inline json run_roots(const json& job, bool explain) {
  auto exps = job["A"].get<std::vector<int>>();
  int j = job["j"].get<int>();
  return with_fgl(job, std::max(max_of(exps), j), [&](const auto& F) {
    AbelianPGroup A(job["p"].get<long>(), exps);
    auto c = build_classifying_ring(F, A);
    auto roots = pj_root_set(c, j);
    auto g = c.torsion_polynomial(j);
    json list = json::array();
    for (const auto& r : roots) {
      json item{{"w", r.w}, {"value", c.ring().to_string(r.value)}};
      if (explain) item["g_at_root"] = c.ring().to_string(c.eval_polynomial(g, r.value));
      list.push_back(item);
    }
    return json{{"fgl", io::fgl_json(F)},
                {"j", j},
                {"V_count", io::int_string(V_count(A, j))},
                {"torsion_polynomial", io::coefficient_list(g)},
                {"roots", list}};
  });
}

inline json run_tate(const json& job, bool explain) {
  auto exps = job["A"].get<std::vector<int>>();
  auto cexps = job["C"].get<std::vector<int>>();
  auto max_len = get_or<std::size_t>(job, "max_cert_len", 16);
  return with_fgl(job, max_of(exps), [&](const auto& F) {
    AbelianPGroup A(job["p"].get<long>(), exps);
    SubgroupSpec C{cexps};
    auto t = tate_ring(F, A, C, max_len);
    json out = io::tate_json(t, explain);
    out["fgl"] = io::fgl_json(F);
    out["group"] = {{"p", A.p()}, {"A", exps}, {"C", cexps}};
    if constexpr (std::is_same_v<std::decay_t<decltype(F.ring())>, ModularRing>)
      out["periodicity"] = io::periodicity_json(periodicity_from(t));
    if (explain && t.status == TateStatus::Zero) {
      int j = blueshift_bounds(A.p(), exps, cexps).argmax_j;
      out["torsion_root_check"] = io::vanishing_json(torsion_root_vanishing(t.classifying, C, j), true);
      out["torsion_root_check"]["j"] = j;
    }
    return out;
  });
}

inline json run_vanish_cert(const json& job, bool explain) {
  auto exps = job["A"].get<std::vector<int>>();
  auto cexps = job["C"].get<std::vector<int>>();
  AbelianPGroup A(job["p"].get<long>(), exps);
  SubgroupSpec C{cexps};
  C.validate(A);
  int j = job.contains("j") ? job["j"].get<int>() : blueshift_bounds(A.p(), exps, cexps).argmax_j;
  return with_fgl(job, std::max(max_of(exps), j), [&](const auto& F) {
    auto c = build_classifying_ring(F, A);
    json out = io::vanishing_json(torsion_root_vanishing(c, C, j), explain);
    out["j"] = j;
    out["fgl"] = io::fgl_json(F);
    out["group"] = {{"p", A.p()}, {"A", exps}, {"C", cexps}};
    return out;
  });
}

inline json run_blueshift(const json& job, bool explain) {
  long p = job["p"].get<long>();
  auto A = job["A"].get<std::vector<int>>();
  auto C = job["C"].get<std::vector<int>>();
  if (get_or<bool>(job, "nonabelian", false)) {
    auto b = nonabelian_lower_bound(p, A, C);
    json out{{"p", p}, {"abelianization", A}, {"image", C}, {"lower_t", b.t}, {"argmax_j", b.argmax_j},
             {"conditional", b.conditional}, {"note", b.note}};
    if (explain) out["j_scan"] = io::blueshift_json(blueshift_bounds(p, A, C), true)["j_scan"];
    return out;
  }
  return io::blueshift_json(blueshift_bounds(p, A, C), explain);
}

inline std::string summary(const std::string& cmd, const json& r) {
  std::ostringstream s;
  if (cmd == "blueshift") {
    s << "t = " << r["lower_t"];
    if (r.contains("upper_rank")) s << ", rank_p(C) = " << r["upper_rank"];
    if (r.contains("exact") && !r["exact"].is_null()) s << ", exact = " << r["exact"];
  } else if (cmd == "tate") {
    s << r["status"].get<std::string>() << " over " << r["level"].get<std::string>();
    if (!r["certificate"].is_null()) s << ", certificate length " << r["certificate"]["length"];
  } else if (cmd == "bgroup") {
    s << r["ring"]["description"].get<std::string>();
  } else if (cmd == "roots") {
    s << r["roots"].size() << " roots for j = " << r["j"];
  } else if (cmd == "vanish-cert") {
    s << r["verdict"].get<std::string>() << " (" << r["case"].get<std::string>() << ")";
  } else if (cmd == "fgl") {
    s << (r.contains("pj_series") ? r["pj_series"]["text"] : r["law"]["text"]).get<std::string>();
  }
  return s.str();
}

}  // namespace detail

inline json error_report(const std::string& kind, const std::string& code, const std::string& module,
                         const std::string& message) {
  return {{"error", {{"kind", kind}, {"code", code}, {"module", module}, {"message", message}}}};
}

inline JobOutcome run_job(const json& job) {
  std::string cmd = job.is_object() && job.contains("command") && job["command"].is_string()
                        ? job["command"].get<std::string>()
                        : std::string();
  try {
    detail::validate(job);
    bool explain = detail::get_or<bool>(job, "explain", false);
    json r;
    if (cmd == "fgl") r = detail::run_fgl(job, explain);
    else if (cmd == "bgroup") r = detail::run_bgroup(job, explain);
    else if (cmd == "roots") r = detail::run_roots(job, explain);
    else if (cmd == "tate") r = detail::run_tate(job, explain);
    else if (cmd == "vanish-cert") r = detail::run_vanish_cert(job, explain);
    else r = detail::run_blueshift(job, explain);
    r["command"] = cmd;
    r["summary"] = detail::summary(cmd, r);
    if (job.contains("output")) {
      // the report also goes to the named file
      std::string path = job["output"];
      std::ofstream out(path);
      if (!(out << r.dump(2) << "\n"))
        return {ComputationError, error_report("io", "OutputNotWritable", "cli", "cannot write " + path)};
    }
    return {Ok, r};
  } catch (const ValidationFailure& e) {
    auto r = error_report("validation", "InvalidJob", "cli", e.what());
    if (!cmd.empty()) r["command"] = cmd;
    return {ValidationError, r};
  } catch (const Error& e) {
    auto r = error_report("computation", std::string(e.name()), e.module(), e.detail());
    r["command"] = cmd;
    return {ComputationError, r};
  }
}

inline JobOutcome run_job_text(const std::string& text) {
  json job;
  try {
    job = json::parse(text);
  } catch (const json::parse_error& e) {
    return {ValidationError, error_report("validation", "InvalidJson", "cli", e.what())};
  }
  return run_job(job);
}

// Newline-delimited jobs; blank lines are skipped. Reports keep input order.
inline JobOutcome run_batch(std::istream& in, unsigned threads = 1) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  std::vector<JobOutcome> results(lines.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < lines.size(); ++i) results[i] = run_job_text(lines[i]);
  } else {
    std::vector<std::future<void>> pending;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < threads; ++t)
      pending.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next++) < lines.size();) results[i] = run_job_text(lines[i]);
      }));
    for (auto& f : pending) f.get();
  }
  JobOutcome out{Ok, {{"command", "batch"}, {"jobs", json::array()}}};
  for (auto& r : results) {
    out.exit_code = std::max(out.exit_code, r.exit_code);
    out.report["jobs"].push_back({{"exit_code", r.exit_code}, {"report", std::move(r.report)}});
  }
  out.report["exit_code"] = out.exit_code;
  return out;
}

}  // namespace chromalg::cli
