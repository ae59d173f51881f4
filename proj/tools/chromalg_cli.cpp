#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "chromalg/cli/jobs.hpp"

using chromalg::cli::json;

namespace {

struct Flags {
  std::string kind = "honda";
  long p = 0;
  std::optional<int> n, modulus_power, cap, j, m, max_cert_len;
  bool exact = false;
  bool explain = false;
  bool euler = false;
  bool weierstrass = false;
  bool nonabelian = false;
  std::vector<int> A, C;
  std::string output;
  int indent = 2;
};

void fgl_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--kind", f.kind, "honda, multiplicative or additive")
      ->check(CLI::IsMember({"honda", "multiplicative", "additive"}));
  sub->add_option("--p", f.p, "prime")->required();
  sub->add_option("--n", f.n, "Honda height");
  sub->add_option("--modulus-power", f.modulus_power, "base Z/p^K");
  sub->add_flag("--exact", f.exact, "work over the integers");
  sub->add_option("--cap", f.cap, "truncation degree");
}

json job_from(const std::string& cmd, const Flags& f, bool with_fgl) {
  json j{{"command", cmd}, {"p", f.p}};
  if (with_fgl) {
    j["kind"] = f.kind;
    if (f.n) j["n"] = *f.n;
    if (f.modulus_power) j["modulus_power"] = *f.modulus_power;
    if (f.cap) j["cap"] = *f.cap;
    if (f.exact) j["base"] = "integers";
  }
  if (f.explain) j["explain"] = true;
  if (!f.output.empty()) j["output"] = f.output;
  return j;
}

int emit(const chromalg::cli::JobOutcome& r, int indent) {
  std::cout << r.report.dump(indent) << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chromalg: formal group laws, classifying rings and Tate vanishing"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--indent", f.indent, "JSON indentation (-1 for one line)");

  auto* fgl = app.add_subcommand("fgl", "formal group law and its [p^j]-series");
  fgl_flags(fgl, f);
  fgl->add_option("--j", f.j, "print [p^j](x)");
  fgl->add_option("--m", f.m, "print [m](x)");
  fgl->add_flag("--weierstrass", f.weierstrass, "Weierstrass-prepare [p^j](x)");

  auto* bgroup = app.add_subcommand("bgroup", "E^*(BA) for a finite abelian p-group A");
  fgl_flags(bgroup, f);
  bgroup->add_option("--A,--exponents", f.A, "exponents of A")->required()->delimiter(',');
  bgroup->add_flag("--euler", f.euler, "list Euler classes");

  auto* roots = app.add_subcommand("roots", "Euler classes of p^j-torsion as roots of [p^j]");
  fgl_flags(roots, f);
  roots->add_option("--A,--exponents", f.A, "exponents of A")->required()->delimiter(',');
  roots->add_option("--j", f.j, "torsion level")->required();

  auto* tate = app.add_subcommand("tate", "vanishing of the Tate-type localization");
  fgl_flags(tate, f);
  tate->add_option("--A,--exponents", f.A, "exponents of A")->required()->delimiter(',');
  tate->add_option("--C", f.C, "subgroup exponents")->required()->delimiter(',');
  tate->add_option("--max-cert-len", f.max_cert_len, "longest zero-product certificate to search");

  auto* vc = app.add_subcommand("vanish-cert", "vanishing via a tuple of torsion roots");
  fgl_flags(vc, f);
  vc->add_option("--A,--exponents", f.A, "exponents of A")->required()->delimiter(',');
  vc->add_option("--C", f.C, "subgroup exponents")->required()->delimiter(',');
  vc->add_option("--j", f.j, "torsion level (default: maximizing j)");

  auto* blue = app.add_subcommand("blueshift", "blue-shift bounds");
  blue->add_option("--p", f.p, "prime")->required();
  blue->add_option("--A,--exponents", f.A, "exponents of A")->required()->delimiter(',');
  blue->add_option("--C", f.C, "subgroup exponents")->required()->delimiter(',');
  blue->add_flag("--nonabelian", f.nonabelian, "A and C describe the abelianization and the image");

  for (auto* s : {fgl, bgroup, roots, tate, vc, blue}) {
    s->add_flag("--explain", f.explain, "include derivations");
    s->add_option("--output", f.output, "also write the report to this file");
  }

  std::string path;
  unsigned threads = 1;
  auto* run = app.add_subcommand("run", "run one JSON job (file or -)");
  run->add_option("file", path, "job file")->required();
  auto* batch = app.add_subcommand("batch", "run newline-delimited JSON jobs");
  batch->add_option("file", path, "jobs file or -")->required();
  batch->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    auto r = chromalg::cli::error_report("validation", "InvalidArguments", "cli", e.what());
    std::cout << r.dump(f.indent) << "\n";
    return chromalg::cli::ValidationError;
  }

  auto read_all = [&](std::istream& in) { return std::string(std::istreambuf_iterator<char>(in), {}); };
  if (run->parsed() || batch->parsed()) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
      file.open(path);
      if (!file) {
        auto r = chromalg::cli::error_report("validation", "InvalidArguments", "cli", "cannot open " + path);
        std::cout << r.dump(f.indent) << "\n";
        return chromalg::cli::ValidationError;
      }
      in = &file;
    }
    if (run->parsed()) return emit(chromalg::cli::run_job_text(read_all(*in)), f.indent);
    return emit(chromalg::cli::run_batch(*in, threads), f.indent);
  }

  json job;
  if (fgl->parsed()) {
    job = job_from("fgl", f, true);
    if (f.j) job["j"] = *f.j;
    if (f.m) job["m"] = *f.m;
    if (f.weierstrass) job["weierstrass"] = true;
  } else if (bgroup->parsed()) {
    job = job_from("bgroup", f, true);
    job["A"] = f.A;
    if (f.euler) job["euler"] = true;
  } else if (roots->parsed()) {
    job = job_from("roots", f, true);
    job["A"] = f.A;
    job["j"] = *f.j;
  } else if (tate->parsed()) {
    job = job_from("tate", f, true);
    job["A"] = f.A;
    job["C"] = f.C;
    if (f.max_cert_len) job["max_cert_len"] = *f.max_cert_len;
  } else if (vc->parsed()) {
    job = job_from("vanish-cert", f, true);
    job["A"] = f.A;
    job["C"] = f.C;
    if (f.j) job["j"] = *f.j;
  } else {
    job = job_from("blueshift", f, false);
    job["A"] = f.A;
    job["C"] = f.C;
    if (f.nonabelian) job["nonabelian"] = true;
  }
  return emit(chromalg::cli::run_job(job), f.indent);
}
