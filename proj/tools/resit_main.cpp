// Command-line front end: field descriptors and series expressions in,
// invariants and reports out, as text or deterministic JSON.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "resit/resit.hpp"

namespace {

using nlohmann::json;  // object keys are kept sorted, so dumps are canonical
using namespace resit;

struct Options {
  std::string field = "rational";
  long prec = 64;
  long tprec = 64;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string out;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--field", opt.field, "coefficient field descriptor")->capture_default_str();
  cmd->add_option("--prec", opt.prec, "working precision W (z-adic window)")
      ->capture_default_str();
  cmd->add_option("--tprec", opt.tprec, "t-adic precision for laurent fields")
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "seed for randomized checks")->capture_default_str();
  cmd->add_option("--out", opt.out, "write the report to a file instead of stdout");
}

AnyField make_field(const Options& opt) {
  std::string d = opt.field;
  if (d.find("laurent") != std::string::npos && d.find("tprec") == std::string::npos) {
    d += ";tprec=" + std::to_string(opt.tprec);
  }
  return parse_descriptor(d);
}

void deliver(const Options& opt, const std::string& payload) {
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) fail(Err::BadParameters, "cannot open output file " + opt.out);
    f << payload;
  } else {
    std::cout << payload;
  }
}

void emit(const Options& opt, const std::string& command, const std::string& field_echo,
          const std::optional<std::string>& input, json result, const std::string& text) {
  if (opt.format == "json") {
    json env{{"command", command}, {"result", std::move(result)}, {"status", "ok"}};
    if (!field_echo.empty()) env["field"] = field_echo;
    if (input) {
      env["input"] = *input;
      env["prec"] = opt.prec;
    }
    deliver(opt, env.dump(2) + "\n");
  } else {
    deliver(opt, text);
  }
}

std::string rat_str(const BigRational& r) { return r.str(); }

json jord(const OrdResult& o) {
  if (o.is_finite()) return o.value;
  return nullptr;
}

json jpolygon(const NewtonPolygon& np) {
  json verts = json::array();
  for (const auto& [e, v] : np.vertices) verts.push_back(json::array({e, v}));
  json segs = json::array();
  for (const auto& s : np.segments) {
    segs.push_back(json{{"length", s.length}, {"slope", rat_str(s.slope)}});
  }
  return json{{"hi", np.hi}, {"lo", np.lo}, {"segments", segs}, {"vertices", verts}};
}

json jverdicts(const std::vector<CongruenceVerdict>& vs) {
  json arr = json::array();
  for (const auto& v : vs) {
    arr.push_back(json{{"claim", v.claim},
                       {"computed", v.computed},
                       {"equal", v.equal},
                       {"expected", v.expected}});
  }
  return arr;
}

std::string verdict_text(const std::vector<CongruenceVerdict>& vs) {
  std::string text;
  for (const auto& v : vs) {
    text += (v.equal ? "ok   " : "FAIL ") + v.claim;
    if (!v.equal) text += ": " + v.computed + " != " + v.expected;
    text += "\n";
  }
  long bad = 0;
  for (const auto& v : vs) bad += v.equal ? 0 : 1;
  text += bad == 0 ? "all " + std::to_string(vs.size()) + " congruences hold\n"
                   : std::to_string(bad) + " of " + std::to_string(vs.size()) + " failed\n";
  return text;
}

bool all_equal(const std::vector<CongruenceVerdict>& vs) {
  for (const auto& v : vs) {
    if (!v.equal) return false;
  }
  return true;
}

int cmd_ind(const Options& opt, const std::string& expr) {
  auto field = make_field(opt);
  return std::visit(
      [&](const auto& K) {
        auto f = parse_series(expr, K, opt.prec);
        auto rep = index_report(f);
        json r{{"algorithm", rep.algorithm},
               {"ind", K.str(rep.ind)},
               {"mult", rep.mult},
               {"q", rep.q},
               {"resit", rep.resit ? json(K.str(*rep.resit)) : json(nullptr)}};
        std::string text = "ind = " + K.str(rep.ind) + "\n" + "mult = " + std::to_string(rep.mult) +
                           ", q = " + std::to_string(rep.q) + ", algorithm = " + rep.algorithm +
                           "\n";
        if (rep.resit) text += "resit = " + K.str(*rep.resit) + "\n";
        emit(opt, "ind", descriptor_string(K), expr, std::move(r), text);
        return 0;
      },
      field);
}

int cmd_resit(const Options& opt, const std::string& expr) {
  auto field = make_field(opt);
  return std::visit(
      [&](const auto& K) {
        auto f = parse_series(expr, K, opt.prec);
        auto r = iterative_residue(f);
        long mult = f.mult().value;
        json payload{{"mult", mult}, {"q", mult - 1}, {"resit", K.str(r)}};
        std::string text = "resit = " + K.str(r) + "\nmult = " + std::to_string(mult) +
                           ", q = " + std::to_string(mult - 1) + "\n";
        emit(opt, "resit", descriptor_string(K), expr, std::move(payload), text);
        return 0;
      },
      field);
}

int cmd_ramify(const Options& opt, const std::string& expr, long levels) {
  auto field = make_field(opt);
  return std::visit(
      [&](const auto& K) {
        auto f = parse_series(expr, K, opt.prec);
        auto rep = lower_ramification(f, levels);
        json jlevels = json::array();
        json is = json::array();
        std::string text =
            "p = " + std::to_string(rep.p) + ", q = " + std::to_string(rep.q) + "\n";
        for (const auto& lvl : rep.levels) {
          json jl{{"n", lvl.n},
                  {"resolved", lvl.resolved},
                  {"i", lvl.resolved ? json(lvl.i) : json(nullptr)},
                  {"min_i", lvl.resolved ? json(nullptr) : json(lvl.min_i)},
                  {"delta", lvl.delta ? json(K.str(*lvl.delta)) : json(nullptr)},
                  {"sen_congruence", lvl.sen_congruence ? json(*lvl.sen_congruence) : json(nullptr)},
                  {"sen_bound", lvl.sen_bound ? json(*lvl.sen_bound) : json(nullptr)}};
          jlevels.push_back(std::move(jl));
          is.push_back(lvl.resolved ? json(lvl.i) : json(nullptr));
          text += "i_" + std::to_string(lvl.n) + " = ";
          if (lvl.resolved) {
            text += std::to_string(lvl.i);
            if (lvl.delta) text += "   delta = " + K.str(*lvl.delta);
            if (lvl.sen_congruence) {
              text += *lvl.sen_congruence ? "   congruence ok" : "   CONGRUENCE FAILS";
            }
            if (lvl.sen_bound) text += *lvl.sen_bound ? "   bound ok" : "   BOUND FAILS";
          } else {
            text += ">= " + std::to_string(lvl.min_i) + " (unresolved; raise --prec)";
          }
          text += "\n";
        }
        json r{{"p", rep.p},
               {"q", rep.q},
               {"i", std::move(is)},
               {"levels", std::move(jlevels)},
               {"q_ramified", rep.q_ramified},
               {"resit", rep.resit ? json(K.str(*rep.resit)) : json(nullptr)}};
        text += "q_ramified: " + rep.q_ramified + "\n";
        if (rep.resit) text += "resit = " + K.str(*rep.resit) + "\n";
        emit(opt, "ramify", descriptor_string(K), expr, std::move(r), text);
        return 0;
      },
      field);
}

int cmd_normal_form(const Options& opt, const std::string& expr) {
  auto field = make_field(opt);
  return std::visit(
      [&](const auto& K) {
        auto f = parse_series(expr, K, opt.prec);
        auto nf = normal_form(f);
        json r{{"conjugacy", nf.conjugacy.str()}, {"g", nf.g.str()}, {"ind", K.str(nf.ind)}};
        std::string text = "g = " + nf.g.str() + "\nconjugacy = " + nf.conjugacy.str() +
                           "\nind = " + K.str(nf.ind) + "\n";
        emit(opt, "normal-form", descriptor_string(K), expr, std::move(r), text);
        return 0;
      },
      field);
}

int cmd_iterate(const Options& opt, const std::string& expr, long n) {
  auto field = make_field(opt);
  return std::visit(
      [&](const auto& K) {
        auto f = parse_series(expr, K, opt.prec);
        auto g = f.iterate(n);
        json coeffs = json::array();
        for (long j = 0; j <= g.prec(); ++j) coeffs.push_back(K.str(g.coeff(j)));
        json r{{"coefficients", std::move(coeffs)},
               {"exact", g.exact()},
               {"n", n},
               {"series", g.str()}};
        emit(opt, "iterate", descriptor_string(K), expr, std::move(r), g.str() + "\n");
        return 0;
      },
      field);
}

int cmd_newton(const Options& opt, const std::string& expr, long level) {
  auto field = make_field(opt);
  if (!std::holds_alternative<LaurentField>(field)) {
    fail(Err::UnsupportedField, "newton needs a laurent coefficient field (picked --field '" +
                                    opt.field + "')");
  }
  const auto& K = std::get<LaurentField>(field);
  auto f = parse_series(expr, K, opt.prec);
  auto rep = periodic_bound_report(f, level);
  json jlevels = json::array();
  std::string text = "p = " + std::to_string(rep.p) + ", q = " + std::to_string(rep.q) +
                     ", v(a) = " + std::to_string(rep.v_a) + "\n";
  text += "verdict: " + rep.verdict;
  if (rep.bound) text += "   bound b = " + rat_str(*rep.bound);
  text += "\n";
  for (const auto& lvl : rep.levels) {
    json jl{{"n", lvl.n},
            {"i", lvl.i},
            {"v_delta", lvl.v_delta},
            {"ratio_bound", lvl.ratio_bound ? json(rat_str(*lvl.ratio_bound)) : json(nullptr)},
            {"wideg", jord(lvl.wideg)},
            {"wideg_equality", lvl.wideg_equality},
            {"polygon", lvl.polygon ? jpolygon(*lvl.polygon) : json(nullptr)},
            {"min_root_valuation",
             lvl.min_root_valuation ? json(rat_str(*lvl.min_root_valuation)) : json(nullptr)}};
    jlevels.push_back(std::move(jl));
    text += "level " + std::to_string(lvl.n) + ": i = " + std::to_string(lvl.i) +
            ", v(delta) = " + std::to_string(lvl.v_delta);
    if (lvl.wideg.is_finite()) {
      text += ", wideg = " + std::to_string(lvl.wideg.value) +
              (lvl.wideg_equality ? " (equality)" : "");
    }
    if (lvl.min_root_valuation) {
      text += ", min root valuation = " + rat_str(*lvl.min_root_valuation);
    }
    text += "\n";
    if (lvl.polygon) {
      text += "  polygon:";
      for (const auto& s : lvl.polygon->segments) {
        text += " [slope " + rat_str(s.slope) + " x " + std::to_string(s.length) + "]";
      }
      text += "\n";
    }
  }
  json jv;
  switch (rep.v_resit.kind) {
    case ValuationResult::Kind::Finite:
      jv = rep.v_resit.v;
      break;
    case ValuationResult::Kind::Infinite:
      jv = nullptr;
      break;
    case ValuationResult::Kind::BelowPrecision:
      jv = "below t^" + std::to_string(rep.v_resit.v);
      break;
  }
  json r{{"p", rep.p},
         {"q", rep.q},
         {"v_a", rep.v_a},
         {"v_resit", std::move(jv)},
         {"bound", rep.bound ? json(rat_str(*rep.bound)) : json(nullptr)},
         {"verdict", rep.verdict},
         {"levels", std::move(jlevels)}};
  emit(opt, "newton", descriptor_string(K), expr, std::move(r), text);
  return 0;
}

int emit_verdicts(const Options& opt, const std::string& command, json extra,
                  const std::vector<CongruenceVerdict>& vs) {
  extra["all_equal"] = all_equal(vs);
  extra["verdicts"] = jverdicts(vs);
  emit(opt, command, "", std::nullopt, std::move(extra), verdict_text(vs));
  return all_equal(vs) ? 0 : 1;
}

int cmd_verify_main_lemma(const Options& opt, std::uint64_t p, long q, long ell) {
  std::vector<CongruenceVerdict> vs;
  json extra{{"p", p}, {"q", q}};
  if (ell < 0 || ell == q) {
    vs = main_lemma_case1_check(p, q);
    extra["case"] = 1;
  } else {
    vs = main_lemma_case2_check(p, q, ell);
    extra["case"] = 2;
    extra["ell"] = ell;
  }
  return emit_verdicts(opt, "verify main-lemma", std::move(extra), vs);
}

int cmd_verify_closed_form(const Options& opt, std::uint64_t p, long q) {
  return emit_verdicts(opt, "verify closed-form", json{{"p", p}, {"q", q}},
                       closed_form_check(p, q));
}

int cmd_verify_appendix(const Options& opt, std::uint64_t p, long trials) {
  if (trials < 1) fail(Err::BadParameters, "need --trials >= 1");
  Rng rng(opt.seed);
  std::vector<CongruenceVerdict> vs;
  if (p == 0) {
    RationalField Q;
    for (long t = 0; t < trials; ++t) {
      long q = 1 + static_cast<long>(rng() % 3);
      long n = 1 + static_cast<long>(rng() % 6);
      vs.push_back(fniter_check(random_wild(Q, 2 * q + 2, q, rng), n));
    }
  } else if (p == 2) {
    PrimeField K(2);
    for (long t = 0; t < trials; ++t) {
      long q = 1 + static_cast<long>(rng() % 4);
      long n = 3 + 2 * static_cast<long>(rng() % 4);
      vs.push_back(index_iteration_char2_check(random_wild(K, 2 * q + 6, q, rng), n));
    }
  } else {
    PrimeField K(p);
    if (p < 3) fail(Err::BadParameters, "odd characteristic expected");
    for (long t = 0; t < trials; ++t) {
      long q = 1 + static_cast<long>(rng() % 3);
      long n = p == 3 ? 2 : 2 + static_cast<long>(rng() % (p - 3));
      vs.push_back(resit_iteration_check(random_wild(K, 2 * q + 4, q, rng), n));
      vs.push_back(fniter_check(random_wild(K, 2 * q + 2, q, rng), 1 + static_cast<long>(rng() % 6)));
    }
  }
  return emit_verdicts(opt, "verify appendix",
                       json{{"p", p}, {"seed", opt.seed}, {"trials", trials}}, vs);
}

int cmd_selftest(const Options& opt, bool quick) {
  bool live = opt.format == "text" && opt.out.empty();
  auto results = run_acceptance(quick, opt.seed, live ? &std::cout : nullptr);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::string summary =
      failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed";
  if (opt.format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back(json{{"checks", r.checks},
                         {"detail", r.detail},
                         {"name", r.name},
                         {"number", r.number},
                         {"pass", r.pass}});
    }
    emit(opt, "selftest",  "", std::nullopt,
         json{{"criteria", std::move(arr)},
              {"pass", failed == 0},
              {"quick", quick},
              {"seed", opt.seed}},
         "");
  } else if (live) {
    std::cout << summary << "\n";
  } else {
    std::string text;
    for (const auto& r : results) text += format_criterion(r) + "\n";
    deliver(opt, text + summary + "\n");
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants of power series fixed points: index, iterative residue,\n"
               "ramification, normal forms, and nonarchimedean periodic-point bounds"};
  app.require_subcommand(1);
  Options opt;

  std::string expr;
  long levels = 1, iter_n = 2, period_level = 1;
  std::uint64_t vp = 3;
  long vq = 1, vell = -1, trials = 50;
  bool quick = false;

  auto* c_ind = app.add_subcommand("ind", "residue fixed point index of EXPR");
  c_ind->add_option("expr", expr, "series expression")->required();
  add_common(c_ind, opt);

  auto* c_resit = app.add_subcommand("resit", "iterative residue of EXPR");
  c_resit->add_option("expr", expr, "series expression")->required();
  add_common(c_resit, opt);

  auto* c_ram = app.add_subcommand("ramify", "lower ramification numbers of EXPR");
  c_ram->add_option("expr", expr, "series expression")->required();
  c_ram->add_option("--levels", levels, "deepest level n (computes i_0..i_n)")
      ->capture_default_str();
  add_common(c_ram, opt);

  auto* c_nf = app.add_subcommand("normal-form", "conjugate EXPR to z(1+z^q+ind z^{2q})");
  c_nf->add_option("expr", expr, "series expression")->required();
  add_common(c_nf, opt);

  auto* c_it = app.add_subcommand("iterate", "N-fold composition of EXPR with itself");
  c_it->add_option("expr", expr, "series expression")->required();
  c_it->add_option("-n,--n", iter_n, "iteration count")->capture_default_str();
  add_common(c_it, opt);

  auto* c_nw = app.add_subcommand("newton", "periodic-point valuation bounds for EXPR");
  c_nw->add_option("expr", expr, "series expression")->required();
  c_nw->add_option("--period-level", period_level, "deepest level n (periods p^0..p^n)")
      ->capture_default_str();
  add_common(c_nw, opt);

  auto* c_vf = app.add_subcommand("verify", "symbolic and randomized identity checks");
  c_vf->require_subcommand(1);
  auto* c_vml = c_vf->add_subcommand("main-lemma", "p-th iterate congruences");
  c_vml->add_option("--p", vp, "odd prime")->required();
  c_vml->add_option("--q", vq, "multiplicity parameter")->required();
  c_vml->add_option("--ell", vell, "second-term offset (omit for the ell = q case)");
  add_common(c_vml, opt);
  auto* c_vap = c_vf->add_subcommand("appendix", "randomized iteration-law checks");
  c_vap->add_option("--p", vp, "0 for the rationals, 2, or an odd prime")->required();
  c_vap->add_option("--trials", trials, "number of random series")->capture_default_str();
  add_common(c_vap, opt);
  auto* c_vcf = c_vf->add_subcommand("closed-form", "recursion vs closed form rows");
  c_vcf->add_option("--p", vp, "odd prime")->required();
  c_vcf->add_option("--q", vq, "multiplicity parameter")->required();
  add_common(c_vcf, opt);

  auto* c_st = app.add_subcommand("selftest", "run the acceptance suite");
  c_st->add_flag("--quick", quick, "smaller random samples");
  add_common(c_st, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (c_ind->parsed()) return cmd_ind(opt, expr);
    if (c_resit->parsed()) return cmd_resit(opt, expr);
    if (c_ram->parsed()) return cmd_ramify(opt, expr, levels);
    if (c_nf->parsed()) return cmd_normal_form(opt, expr);
    if (c_it->parsed()) return cmd_iterate(opt, expr, iter_n);
    if (c_nw->parsed()) return cmd_newton(opt, expr, period_level);
    if (c_vf->parsed()) {
      if (c_vml->parsed()) return cmd_verify_main_lemma(opt, vp, vq, vell);
      if (c_vap->parsed()) return cmd_verify_appendix(opt, vp, trials);
      return cmd_verify_closed_form(opt, vp, vq);
    }
    return cmd_selftest(opt, quick);
  } catch (const Error& e) {
    if (opt.format == "json") {
      json env{{"command", command},
               {"error", {{"code", err_name(e.code())}, {"message", e.what()}}},
               {"status", "error"}};
      try {
        deliver(opt, env.dump(2) + "\n");
      } catch (const Error&) {
        std::cerr << env.dump(2) << "\n";
      }
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return e.code() == Err::ParseError ? 2 : 1;
  }
}
