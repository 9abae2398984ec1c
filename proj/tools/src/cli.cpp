#include "canonq/cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "canonq/constraints.hpp"
#include "canonq/dynamics.hpp"
#include "canonq/errors.hpp"
#include "canonq/lang.hpp"
#include "canonq/laws.hpp"
#include "canonq/matrixlab.hpp"
#include "canonq/poisson.hpp"
#include "canonq/quantise.hpp"
#include "canonq/sampling.hpp"
#include "canonq/weyl.hpp"

namespace canonq::cli {

const std::string& RunReport::output() const {
  rendered_ = json ? record.dump(2) + "\n" : text;
  return rendered_;
}

namespace {

struct Out {
  Json result = Json::object();
  Json diagnostics = Json::array();
  std::vector<std::string> lines;
  int exit_code = 0;

  void line(std::string s) { lines.push_back(std::move(s)); }
  void fail(const std::string& why) {
    exit_code = 1;
    diagnostics.push_back(why);
  }
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << (x == 0.0 ? 0.0 : x);  // no "-0"
  return os.str();
}

std::string nums(const std::vector<double>& xs) {
  std::string s = "(";
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + num(xs[k]);
  return s + ")";
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

int dof(const std::vector<std::string>& srcs, int given) {
  if (given > 0) return given;
  int n = 1;
  for (const auto& s : srcs) n = std::max(n, infer_dof(s));
  return n;
}

OperatorSpace parse_space(const std::string& s) {
  if (s == "schrodinger") return OperatorSpace::Schrodinger;
  if (s == "phase") return OperatorSpace::PhaseSpace;
  throw std::invalid_argument("unknown operator space '" + s + "'");
}

std::string show_op(const WeylOp& a, bool momentum) {
  if (momentum && a.space() == OperatorSpace::Schrodinger) return to_string(a, OperatorStyle::Momentum);
  return to_string(a);
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: '" + s + "'");
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

Json law_json(const LawReport& rep) {
  Json laws = Json::array();
  for (const auto& r : rep.results) {
    Json j = {{"suite", rep.suite}, {"law", r.law}, {"cases", r.cases}, {"passed", r.passed}};
    if (r.counterexample) j["counterexample"] = *r.counterexample;
    laws.push_back(std::move(j));
  }
  return laws;
}

void report_laws(Out& out, const LawReport& rep, Json& laws) {
  for (const auto& r : rep.results) {
    out.line(rep.suite + "/" + r.law + ": " + verdict(r.passed) + " (" + std::to_string(r.cases) + " cases)");
    if (!r.passed) out.fail(rep.suite + "/" + r.law + " violated: " + r.counterexample.value_or(""));
  }
  for (auto& j : law_json(rep)) laws.push_back(std::move(j));
}

struct Command {
  CLI::App* app;
  std::function<void(Out&)> run;
};

}  // namespace

std::vector<std::string> subcommands() {
  return {"pb",        "quantise",   "gvh demo",    "axioms",      "flow",       "monodromy", "scan",
          "constraints", "sl2 basis", "sl2 probe",  "sl2 repcheck", "sl2 triple", "uncertainty", "props",
          "expand",    "eval",       "deriv",       "field",       "member",     "op",        "commutator",
          "adjoint",   "symmetrise", "squaring",    "hom"};
}

RunReport run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Exact canonical quantisation toolkit", "canonq"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output rendering")->check(CLI::IsMember({"text", "json"}));

  std::vector<Command> commands;
  auto add = [&](CLI::App* sub, std::function<void(Out&)> run) { commands.push_back({sub, std::move(run)}); };

  // Shared option storage; each subcommand binds the subset it needs.
  int n_opt = 0;
  std::string f_src, g_src, map_name, style = "derivative", space_name = "schrodinger";
  unsigned cases = 0, seed_u = 1;
  double tol = 0.0;

  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n_opt, "Degrees of freedom (inferred when omitted)"); };
  auto momentum = [&] { return style == "momentum"; };
  auto add_style = [&](CLI::App* sub) {
    sub->add_option("--style", style, "Operator printing")->check(CLI::IsMember({"derivative", "momentum"}));
  };

  // ------------------------------------------------------------ pb
  {
    auto* sub = app.add_subcommand("pb", "Poisson bracket {F, G}");
    sub->add_option("F", f_src)->required();
    sub->add_option("G", g_src)->required();
    add_n(sub);
    add(sub, [&](Out& out) {
      const int n = dof({f_src, g_src}, n_opt);
      const PhasePoly r = bracket(parse_poly(f_src, n), parse_poly(g_src, n));
      out.result = {{"n", n}, {"bracket", to_string(r)}};
      out.line(to_string(r));
    });
  }

  // ------------------------------------------------------------ quantise
  {
    auto* sub = app.add_subcommand("quantise", "Apply a quantisation map to F");
    sub->alias("quantize");
    sub->add_option("--map", map_name, "quadratic | schrodinger | prequant")->required();
    sub->add_option("F", f_src)->required();
    add_n(sub);
    add_style(sub);
    add(sub, [&](Out& out) {
      const QuantMap map{parse_map_kind(map_name), dof({f_src}, n_opt)};
      const PhasePoly f = parse_poly(f_src, map.n);
      const WeylOp op = apply_map(map, f);
      out.result = {{"map", std::string(to_string(map.kind))},
                    {"n", map.n},
                    {"input", to_string(f)},
                    {"operator", to_string(op)},
                    {"symmetric", is_symmetric(op)}};
      if (op.space() == OperatorSpace::Schrodinger)
        out.result["operator_momentum"] = to_string(op, OperatorStyle::Momentum);
      out.line(show_op(op, momentum()));
    });
  }

  // ------------------------------------------------------------ gvh demo
  bool numeric = false;
  {
    auto* gvh = app.add_subcommand("gvh", "Groenewold-van Hove obstruction");
    gvh->require_subcommand(1);
    auto* sub = gvh->add_subcommand("demo", "Quantise q^2 p^2 along two routes and compare");
    sub->add_flag("--numeric", numeric, "Substitute hbar = 1");
    add(sub, [&](Out& out) {
      const GvhReport r = gvh_contradiction(!numeric);
      out.result = {{"route_a", to_string(r.route_a, OperatorStyle::Momentum)},
                    {"route_b", to_string(r.route_b, OperatorStyle::Momentum)},
                    {"discrepancy", to_string(r.discrepancy, OperatorStyle::Momentum)},
                    {"route_a_normal_ordered", to_string(r.route_a)},
                    {"route_b_normal_ordered", to_string(r.route_b)},
                    {"classical_a", to_string(r.classical_a)},
                    {"classical_b", to_string(r.classical_b)},
                    {"discrepancy_is_scalar", r.discrepancy.is_scalar()}};
      out.line("classical   (1/9){q^3, p^3}   = " + to_string(r.classical_a));
      out.line("classical   (1/3){q^2p, p^2q} = " + to_string(r.classical_b));
      out.line("route_a     = " + to_string(r.route_a, OperatorStyle::Momentum));
      out.line("route_b     = " + to_string(r.route_b, OperatorStyle::Momentum));
      out.line("discrepancy = " + to_string(r.discrepancy, OperatorStyle::Momentum));
    });
  }

  // ------------------------------------------------------------ axioms
  {
    auto* sub = app.add_subcommand("axioms", "Run the quantisation axiom suite for one map");
    sub->add_option("--map", map_name)->required();
    sub->add_option("--cases", cases, "Random samples per axiom")->default_val(200);
    sub->add_option("--seed", seed_u)->default_val(1);
    add_n(sub);
    add(sub, [&](Out& out) {
      const QuantMap map{parse_map_kind(map_name), n_opt > 0 ? n_opt : 1};
      const AxiomReport rep = check_axiom_suite(map, cases, seed_u);
      Json axioms = Json::array();
      for (const auto& r : rep.results) {
        Json j = {{"axiom", r.axiom}, {"passed", r.passed}};
        if (r.counterexample) j["counterexample"] = *r.counterexample;
        axioms.push_back(std::move(j));
        out.line(r.axiom + ": " + verdict(r.passed));
        if (!r.passed) out.fail(r.axiom + " violated: " + r.counterexample.value_or(""));
      }
      out.result = {{"map", std::string(to_string(map.kind))},
                    {"n", map.n},
                    {"samples", rep.samples},
                    {"seed", rep.seed},
                    {"axioms", std::move(axioms)}};
    });
  }

  // ------------------------------------------------------------ flow
  std::vector<double> z0;
  double t_max = 0.0, hbar = 1.0;
  unsigned points = 11;
  {
    auto* sub = app.add_subcommand("flow", "Integrate the Hamiltonian flow of F");
    sub->add_option("--f", f_src, "Hamiltonian")->required();
    sub->add_option("--z0", z0, "Initial point q1,..,qn,p1,..,pn")->required()->delimiter(',');
    sub->add_option("--tmax", t_max)->required();
    sub->add_option("--tol", tol)->default_val(1e-10);
    sub->add_option("--hbar", hbar, "Value substituted for hbar")->default_val(1.0);
    sub->add_option("--points", points, "Trajectory samples to print")->default_val(11);
    add_n(sub);
    add(sub, [&](Out& out) {
      const int n = n_opt > 0 ? n_opt : std::max(dof({f_src}, 0), static_cast<int>(z0.size() / 2));
      FlowOptions opts;
      opts.hbar = hbar;
      const FlowResult r = integrate_flow(parse_poly(f_src, n), z0, t_max, tol, opts);
      const bool blowup = r.status == FlowStatus::Blowup;
      Json traj = Json::array();
      const std::size_t total = r.samples.size();
      const std::size_t shown = std::min<std::size_t>(std::max(points, 2u), total);
      for (std::size_t k = 0; k < shown; ++k) {
        const auto& s = r.samples[shown == 1 ? 0 : k * (total - 1) / (shown - 1)];
        traj.push_back({{"t", s.t}, {"q", s.q}, {"p", s.p}});
      }
      const FlowSample& last = r.final_state();
      out.result = {{"status", blowup ? "BLOWUP" : "COMPLETED"},
                    {"steps", total - 1},
                    {"final", {{"t", last.t}, {"q", last.q}, {"p", last.p}}},
                    {"energy_drift", r.energy_drift},
                    {"trajectory", std::move(traj)}};
      out.line(std::string("status: ") + (blowup ? "BLOWUP" : "COMPLETED"));
      if (blowup) {
        out.result["t_star_estimate"] = *r.t_star_estimate;
        out.result["t_star_bracket"] = {r.t_star_bracket->first, r.t_star_bracket->second};
        out.line("t*: " + num(*r.t_star_estimate) + " in [" + num(r.t_star_bracket->first) + ", " +
                 num(r.t_star_bracket->second) + "]");
      }
      out.line("final: t = " + num(last.t) + ", q = " + nums(last.q) + ", p = " + nums(last.p));
      out.line("energy drift: " + num(r.energy_drift));
    });
  }

  // ------------------------------------------------------------ monodromy
  double energy = 0.0, radius = 1.0;
  {
    auto* sub = app.add_subcommand("monodromy", "Angular monodromy of the prequantum oscillator");
    sub->add_option("--E", energy)->required();
    sub->add_option("--r", radius)->default_val(1.0);
    sub->add_option("--hbar", hbar)->default_val(1.0);
    sub->add_option("--tol", tol)->default_val(1e-9);
    add(sub, [&](Out& out) {
      const MonodromyResult m = monodromy(energy, radius, hbar, tol);
      out.result = {{"E", m.E},           {"r", m.r},
                    {"hbar", m.hbar},     {"defect", m.defect},
                    {"modulus_drift", m.modulus_drift}, {"single_valued", m.single_valued}};
      out.line("defect: " + num(m.defect));
      out.line(std::string("single-valued: ") + (m.single_valued ? "yes" : "no"));
    });
  }

  // ------------------------------------------------------------ scan
  double e_min = 0.0, e_max = 0.0, step = 0.0;
  int oracle_levels = 0;
  {
    auto* sub = app.add_subcommand("scan", "Scan E for single-valued prequantum eigenfunctions");
    sub->add_option("--emin", e_min)->required();
    sub->add_option("--emax", e_max)->required();
    sub->add_option("--step", step)->default_val(0.05);
    sub->add_option("--r", radius)->default_val(1.0);
    sub->add_option("--hbar", hbar)->default_val(1.0);
    sub->add_option("--tol", tol)->default_val(1e-9);
    sub->add_option("--schrodinger", oracle_levels, "Also list this many Schrodinger oscillator levels");
    add(sub, [&](Out& out) {
      const auto levels = spectrum_scan(e_min, e_max, step, radius, hbar, tol);
      Json arr = Json::array();
      std::string line = "levels:";
      for (const auto& p : levels) {
        arr.push_back({{"E", p.E}, {"defect", p.defect}});
        line += " " + num(std::round(p.E * 1e9) / 1e9);
      }
      out.result = {{"r", radius}, {"hbar", hbar}, {"tol", tol}, {"levels", std::move(arr)}};
      out.line(line);
      if (oracle_levels > 0) {
        const auto s = schrodinger_oscillator_levels(oracle_levels, hbar);
        out.result["schrodinger_levels"] = s;
        std::string sl = "schrodinger:";
        for (double e : s) sl += " " + num(e);
        out.line(sl);
      }
    });
  }

  // ------------------------------------------------------------ constraints
  std::vector<std::string> phi_srcs;
  std::string test_src;
  bool force_linear = false;
  unsigned samples = 64, multiplier_degree = 2;
  {
    auto* sub = app.add_subcommand("constraints", "First-class analysis of a constraint set");
    sub->add_option("--phi", phi_srcs, "Constraint function (repeatable)")->required()->allow_extra_args(false);
    sub->add_option("--test", test_src, "Observable to test for idealiser membership");
    sub->add_flag("--linear", force_linear, "Require the exact linear path");
    sub->add_option("--samples", samples)->default_val(64);
    sub->add_option("--seed", seed_u)->default_val(1);
    sub->add_option("--tol", tol)->default_val(1e-6);
    sub->add_option("--degree", multiplier_degree, "Multiplier degree for membership tests")->default_val(2);
    add_n(sub);
    add(sub, [&](Out& out) {
      std::vector<std::string> all = phi_srcs;
      if (!test_src.empty()) all.push_back(test_src);
      const int n = dof(all, n_opt);
      std::vector<PhasePoly> phis;
      for (const auto& s : phi_srcs) phis.push_back(parse_poly(s, n));
      if (force_linear)
        for (const auto& phi : phis)
          if (phi.degree() > 1) throw std::invalid_argument("--linear given but " + to_string(phi) + " is nonlinear");
      SamplingOptions so;
      so.count = samples;
      so.seed = seed_u;
      const ConstraintSet cs = make_constraint_set(phis, so);
      const ConstraintReport rep = first_class_check(cs, tol);

      Json matrix = Json::array();
      for (const auto& row : rep.bracket_matrix) {
        Json r = Json::array();
        for (const auto& b : row) r.push_back(to_string(b));
        matrix.push_back(std::move(r));
      }
      Json witnesses = Json::array();
      for (const auto& w : rep.witnesses) {
        witnesses.push_back({{"alpha", w.alpha + 1}, {"beta", w.beta + 1}, {"bracket", w.bracket},
                             {"value", w.value}, {"point", w.point}});
        out.line("witness: {phi" + std::to_string(w.alpha + 1) + ", phi" + std::to_string(w.beta + 1) +
                 "} = " + w.bracket);
      }
      out.result = {{"n", n},
                    {"constraints", phi_srcs},
                    {"linear", cs.linear},
                    {"exact", rep.exact},
                    {"first_class", rep.first_class},
                    {"bracket_matrix", std::move(matrix)},
                    {"witnesses", std::move(witnesses)}};
      if (rep.coisotropic) out.result["coisotropic"] = *rep.coisotropic;
      if (!cs.linear) {
        out.result["surface_samples"] = cs.surface_samples.size();
        out.result["max_residual"] = cs.max_residual;
      }
      out.lines.insert(out.lines.begin(), std::string("first-class: ") + (rep.first_class ? "yes" : "no") +
                                              (rep.exact ? " (exact)" : " (sampled)"));
      if (rep.coisotropic) out.line(std::string("coisotropic: ") + (*rep.coisotropic ? "yes" : "no"));
      if (!rep.first_class) out.fail("constraint set is not first-class");

      if (!test_src.empty()) {
        const PhasePoly g = parse_poly(test_src, n);
        const MembershipResult ideal = idealiser_member(g, cs, tol, multiplier_degree);
        const MembershipResult central = centraliser_member(g, cs, multiplier_degree);
        Json iw = Json::array();
        for (const auto& w : ideal.witnesses)
          iw.push_back({{"alpha", w.alpha + 1}, {"multiplier", w.multiplier}, {"bracket", w.bracket},
                        {"value", w.value}, {"point", w.point}});
        out.result["test"] = {{"observable", to_string(g)},
                              {"idealiser_member", ideal.member},
                              {"centraliser_member", central.member},
                              {"exact", ideal.exact},
                              {"witnesses", std::move(iw)}};
        out.line("idealiser member: " + std::string(ideal.member ? "yes" : "no"));
        out.line("strong centraliser member: " + std::string(central.member ? "yes" : "no"));
        if (!ideal.member) {
          const auto& w = ideal.witnesses.front();
          out.line("  {" + to_string(g) + ", " + w.multiplier + "*phi" + std::to_string(w.alpha + 1) +
                   "} = " + w.bracket);
          out.fail(to_string(g) + " is not in the Lie idealiser");
        }
      }
    });
  }

  // ------------------------------------------------------------ sl2
  std::vector<double> x_coeffs;
  unsigned random_probes = 0;
  std::string file;
  std::string h_src = "1/2*(q*p + p*q)", ep_src = "1/2*p^2", em_src = "-1/2*q^2";
  {
    auto* sl2 = app.add_subcommand("sl2", "Finite-dimensional sl(2) checks");
    sl2->require_subcommand(1);

    auto* basis = sl2->add_subcommand("basis", "Commutation relations of the 2x2 basis, exactly");
    add(basis, [&](Out& out) {
      const Sl2BasisResiduals r = check_sl2_basis();
      const char* names[] = {"[H,E+] = 2E+", "[H,E-] = -2E-", "[E+,E-] = H"};
      Json rel = Json::array();
      for (int k = 0; k < 3; ++k) {
        rel.push_back({{"relation", names[k]}, {"residual", r.residuals[k]}});
        out.line(std::string(names[k]) + ": residual " + std::to_string(r.residuals[k]));
      }
      out.result = {{"relations", std::move(rel)}, {"exact", r.exact()}};
      if (!r.exact()) out.fail("basis relations violated");
    });

    auto* probe = sl2->add_subcommand("probe", "Dimension of the ideal generated by aE+ + bE- + cH");
    probe->add_option("--x", x_coeffs, "a,b,c")->delimiter(',')->expected(3);
    probe->add_option("--random", random_probes, "Probe this many random nonzero elements instead");
    probe->add_option("--seed", seed_u)->default_val(1);
    probe->add_option("--tol", tol)->default_val(1e-9);
    add(probe, [&](Out& out) {
      if (random_probes > 0) {
        std::map<int, unsigned> histogram;
        for (unsigned k = 0; k < random_probes; ++k) {
          Rng rng = case_rng(seed_u, k);
          std::normal_distribution<double> gauss;
          double a = 0, b = 0, c = 0;
          while (a == 0 && b == 0 && c == 0) a = gauss(rng), b = gauss(rng), c = gauss(rng);
          ++histogram[simplicity_probe(a, b, c, tol)];
        }
        Json h = Json::object();
        for (const auto& [d, count] : histogram) h[std::to_string(d)] = count;
        out.result = {{"probes", random_probes}, {"seed", seed_u}, {"dimensions", h}};
        const unsigned full = histogram.count(3) ? histogram[3] : 0;
        out.line("ideal dimension 3 for " + std::to_string(full) + "/" + std::to_string(random_probes) + " elements");
        if (full != random_probes) out.fail("some element generated a proper ideal");
        return;
      }
      if (x_coeffs.size() != 3) throw std::invalid_argument("sl2 probe needs --x a,b,c or --random K");
      const int d = simplicity_probe(x_coeffs[0], x_coeffs[1], x_coeffs[2], tol);
      out.result = {{"x", x_coeffs}, {"ideal_dimension", d}};
      out.line(std::to_string(d));
      if (d != 3) out.fail("proper ideal found");
    });

    auto* rep = sl2->add_subcommand("repcheck", "Test A, B+, B- as an anti-Hermitean representation");
    rep->add_option("--file", file, "Matrix file")->required();
    rep->add_option("--tol", tol)->default_val(1e-8);
    add(rep, [&](Out& out) {
      const RepMatrices m = read_rep_file(file);
      const Sl2CheckReport r = antiunitary_rep_check(m.A, m.Bp, m.Bm, tol);
      out.result = {{"dim", m.A.rows()},
                    {"verdict", to_string(r.verdict)},
                    {"relation_residuals", r.relation_residuals},
                    {"hermiticity_residuals", r.hermiticity_residuals},
                    {"norms", r.norms},
                    {"trace_b_plus_sq", {r.trace_b_plus_sq.real(), r.trace_b_plus_sq.imag()}},
                    {"trace_identity_rhs", {r.trace_identity_rhs.real(), r.trace_identity_rhs.imag()}}};
      out.line("verdict: " + to_string(r.verdict));
      out.line("relation residuals: " + nums({r.relation_residuals.begin(), r.relation_residuals.end()}));
      out.line("hermiticity residuals: " +
               nums({r.hermiticity_residuals.begin(), r.hermiticity_residuals.end()}));
      out.line("trace(B+^2) = " + num(r.trace_b_plus_sq.real()) + " + " + num(r.trace_b_plus_sq.imag()) + "i");
      if (r.verdict != RepVerdict::VALID_REP) out.fail("matrices are not a valid representation: " + to_string(r.verdict));
    });

    auto* triple = sl2->add_subcommand("triple", "Check sl(2) relations for three operators");
    triple->add_option("--hop", h_src, "Operator playing the role of h")->capture_default_str();
    triple->add_option("--ep", ep_src)->capture_default_str();
    triple->add_option("--em", em_src)->capture_default_str();
    triple->add_option("--space", space_name)->check(CLI::IsMember({"schrodinger", "phase"}));
    add_n(triple);
    add(triple, [&](Out& out) {
      const int n = dof({h_src, ep_src, em_src}, n_opt);
      const OperatorSpace space = parse_space(space_name);
      const WeylOp h = parse_operator(h_src, n, space);
      const WeylOp ep = parse_operator(ep_src, n, space);
      const WeylOp em = parse_operator(em_src, n, space);
      const bool ok = check_sl2_triple(h, ep, em);
      out.result = {{"h", to_string(h)}, {"e_plus", to_string(ep)}, {"e_minus", to_string(em)}, {"sl2", ok}};
      out.line(std::string("sl(2) relations: ") + verdict(ok));
      if (!ok) out.fail("operators do not satisfy the sl(2) relations");
    });
  }

  // ------------------------------------------------------------ uncertainty
  int dim = 2, dim_max = 0;
  {
    auto* sub = app.add_subcommand("uncertainty", "Random trials of the uncertainty inequality");
    sub->add_option("--dim", dim)->default_val(2);
    sub->add_option("--dim-max", dim_max, "Cycle dimensions from --dim up to this value");
    sub->add_option("--trials", cases)->default_val(1000);
    sub->add_option("--seed", seed_u)->default_val(1);
    sub->add_option("--tol", tol)->default_val(1e-9);
    add(sub, [&](Out& out) {
      const int hi = dim_max > 0 ? dim_max : dim;
      const UncertaintyTrials t = uncertainty_trials(dim, hi, cases, seed_u, tol);
      out.result = {{"dim_min", dim},       {"dim_max", hi},          {"trials", t.trials},
                    {"passed", t.passed},   {"worst_margin", t.worst_margin}, {"tol", tol}};
      out.line("passed " + std::to_string(t.passed) + "/" + std::to_string(t.trials) + ", worst margin " +
               num(t.worst_margin));
      if (t.passed != t.trials) out.fail("uncertainty inequality violated");
    });
  }

  // ------------------------------------------------------------ props
  std::string suite = "all";
  {
    auto* sub = app.add_subcommand("props", "Seeded property suites");
    sub->add_option("--suite", suite)->check(CLI::IsMember({"ring", "poisson", "weyl", "quantise", "all"}));
    sub->add_option("--cases", cases)->default_val(1000);
    sub->add_option("--seed", seed_u)->default_val(1);
    add(sub, [&](Out& out) {
      Json laws = Json::array();
      const bool all = suite == "all";
      if (all || suite == "ring") report_laws(out, ring_law_suite(cases, seed_u), laws);
      if (all || suite == "poisson") report_laws(out, poisson_law_suite(cases, seed_u), laws);
      if (all || suite == "weyl") report_laws(out, weyl_law_suite(cases, seed_u), laws);
      if (all || suite == "quantise") {
        const MapKind kinds[] = {MapKind::Quadratic, MapKind::SchrodingerLinear, MapKind::Prequant};
        for (std::size_t k = 0; k < 3; ++k) {
          const AxiomReport rep = check_axiom_suite({kinds[k], 1}, cases, derive_seed(seed_u, k));
          const std::string name = "quantise-" + std::string(to_string(kinds[k]));
          for (const auto& r : rep.results) {
            // Prequantisation is reducible by construction; its Schrodinger check must fail.
            const bool expect_fail = kinds[k] == MapKind::Prequant && r.axiom == "schrodinger-consistency";
            const bool ok = expect_fail ? !r.passed : r.passed;
            Json j = {{"suite", name}, {"law", r.axiom}, {"cases", rep.samples}, {"passed", ok}};
            if (expect_fail) j["expected_violation"] = true;
            if (r.counterexample) j["counterexample"] = *r.counterexample;
            laws.push_back(std::move(j));
            if (expect_fail)
              out.line(name + "/" + r.axiom + ": " + (r.passed ? "PASS (a violation was expected)" : "FAIL (expected)"));
            else
              out.line(name + "/" + r.axiom + ": " + verdict(ok));
            if (!ok) out.fail(name + "/" + r.axiom + " unexpected outcome");
          }
        }
      }
      out.result = {{"suite", suite}, {"cases", cases}, {"seed", seed_u}, {"laws", std::move(laws)}};
    });
  }

  // ------------------------------------------------------------ polynomial utilities
  {
    auto* sub = app.add_subcommand("expand", "Canonical form of F");
    sub->add_option("F", f_src)->required();
    add_n(sub);
    add(sub, [&](Out& out) {
      const int n = dof({f_src}, n_opt);
      const PhasePoly f = parse_poly(f_src, n);
      out.result = {{"n", n},
                    {"canonical", to_string(f)},
                    {"degree", f.degree()},
                    {"homogeneous", f.is_homogeneous()},
                    {"real", f.is_real()}};
      out.line(to_string(f));
    });
  }
  std::vector<std::string> at;
  std::string hbar_src = "1";
  {
    auto* sub = app.add_subcommand("eval", "Evaluate F exactly at a rational point");
    sub->add_option("F", f_src)->required();
    sub->add_option("--at", at, "q1,..,qn,p1,..,pn as rationals")->required()->delimiter(',');
    sub->add_option("--hbar", hbar_src)->capture_default_str();
    add_n(sub);
    add(sub, [&](Out& out) {
      const int n = n_opt > 0 ? n_opt : std::max(dof({f_src}, 0), static_cast<int>(at.size() / 2));
      std::vector<Rational> point;
      for (const auto& s : at) point.push_back(parse_rational(s));
      if (point.size() != static_cast<std::size_t>(2 * n))
        throw DimensionMismatch("expected " + std::to_string(2 * n) + " coordinates");
      const GaussRational v = parse_poly(f_src, n).evaluate(point, parse_rational(hbar_src));
      out.result = {{"value", to_string(v)}};
      out.line(to_string(v));
    });
  }
  std::string var;
  {
    auto* sub = app.add_subcommand("deriv", "Partial derivative of F");
    sub->add_option("F", f_src)->required();
    sub->add_option("--var", var, "q1, p2, ...")->required();
    add_n(sub);
    add(sub, [&](Out& out) {
      const int n = dof({f_src, var}, n_opt);
      const Expr v = parse(var, Context::Commutative, n);
      if (v.kind != Expr::Kind::Variable) throw std::invalid_argument("--var must name a single variable");
      const PhasePoly f = parse_poly(f_src, n);
      const PhasePoly d = v.var == Expr::Var::Q ? f.diff_q(v.index) : f.diff_p(v.index);
      out.result = {{"derivative", to_string(d)}};
      out.line(to_string(d));
    });
  }
  {
    auto* sub = app.add_subcommand("field", "Hamiltonian vector field X_F");
    sub->add_option("F", f_src)->required();
    add_n(sub);
    add(sub, [&](Out& out) {
      const int n = dof({f_src}, n_opt);
      const HamiltonianField x = hamiltonian_field(parse_poly(f_src, n));
      Json comps = Json::object();
      for (int i = 0; i < n; ++i) {
        const std::string suffix = n == 1 ? "" : std::to_string(i + 1);
        comps["d/dq" + suffix] = to_string(x.coeff_q[static_cast<std::size_t>(i)]);
        comps["d/dp" + suffix] = to_string(x.coeff_p[static_cast<std::size_t>(i)]);
      }
      for (auto it = comps.begin(); it != comps.end(); ++it)
        out.line(it.key() + ": " + it.value().get<std::string>());
      out.result = {{"components", std::move(comps)}};
    });
  }
  std::string tag_name;
  {
    auto* sub = app.add_subcommand("member", "Subalgebra membership of F");
    sub->add_option("F", f_src)->required();
    sub->add_option("--class", tag_name, "pol | pol1 | pol2 | pol_inf_1")->required();
    add_n(sub);
    add(sub, [&](Out& out) {
      const SubalgebraTag tag = parse_subalgebra_tag(tag_name);
      const bool in = subalgebra_member(parse_poly(f_src, dof({f_src}, n_opt)), tag);
      out.result = {{"class", std::string(to_string(tag))}, {"member", in}};
      out.line(in ? "yes" : "no");
      if (!in) out.fail("not a member of " + std::string(to_string(tag)));
    });
  }

  // ------------------------------------------------------------ operator utilities
  auto op_command = [&](const char* name, const char* about, int operands,
                        std::function<Json(const std::vector<WeylOp>&, Out&)> body) {
    auto* sub = app.add_subcommand(name, about);
    sub->add_option("A", f_src)->required();
    if (operands == 2) sub->add_option("B", g_src)->required();
    sub->add_option("--space", space_name)->check(CLI::IsMember({"schrodinger", "phase"}));
    add_n(sub);
    add_style(sub);
    add(sub, [&, operands, body](Out& out) {
      std::vector<std::string> srcs{f_src};
      if (operands == 2) srcs.push_back(g_src);
      const int n = dof(srcs, n_opt);
      std::vector<WeylOp> ops;
      for (const auto& s : srcs) ops.push_back(parse_operator(s, n, parse_space(space_name)));
      out.result = body(ops, out);
    });
    return sub;
  };
  op_command("op", "Normal-ordered form of an operator", 1, [&](const std::vector<WeylOp>& a, Out& out) {
    out.line(show_op(a[0], momentum()));
    return Json{{"operator", to_string(a[0])}, {"symmetric", is_symmetric(a[0])}};
  });
  bool lie = false;
  op_command("commutator", "[A, B], or (1/i hbar)[A, B] with --lie", 2, [&](const std::vector<WeylOp>& a, Out& out) {
    const WeylOp c = lie ? lie_bracket(a[0], a[1]) : commutator(a[0], a[1]);
    out.line(show_op(c, momentum()));
    return Json{{"commutator", to_string(c)}, {"lie", lie}};
  })->add_flag("--lie", lie);
  op_command("adjoint", "Formal adjoint A^dagger", 1, [&](const std::vector<WeylOp>& a, Out& out) {
    const WeylOp d = adjoint(a[0]);
    out.line(show_op(d, momentum()));
    return Json{{"adjoint", to_string(d)}, {"symmetric", is_symmetric(a[0])}};
  });
  op_command("symmetrise", "(A + A^dagger)/2", 1, [&](const std::vector<WeylOp>& a, Out& out) {
    const WeylOp s = symmetrise(a[0]);
    out.line(show_op(s, momentum()));
    return Json{{"symmetrised", to_string(s)}};
  });

  // ------------------------------------------------------------ squaring, hom
  unsigned k_power = 2, law = 1, bound = 6;
  {
    auto* sub = app.add_subcommand("squaring", "Generalised squaring law for P(x) = x^k");
    sub->add_option("--k", k_power)->required();
    sub->add_option("--law", law, "1: q^k, 2: p^k, 3: q^k p, 4: p^k q")->required()->check(CLI::Range(1, 4));
    sub->add_option("--bound", bound)->default_val(6);
    add(sub, [&](Out& out) {
      const bool ok = check_generalized_squaring(k_power, static_cast<SquaringLaw>(law), bound);
      out.result = {{"k", k_power}, {"law", law}, {"holds", ok}};
      out.line(verdict(ok));
      if (!ok) out.fail("squaring law identity failed");
    });
  }
  {
    auto* sub = app.add_subcommand("hom", "Check Q({F,G}) = (1/i hbar)[Q(F), Q(G)]");
    sub->add_option("--map", map_name)->required();
    sub->add_option("F", f_src)->required();
    sub->add_option("G", g_src)->required();
    add_n(sub);
    add(sub, [&](Out& out) {
      const QuantMap map{parse_map_kind(map_name), dof({f_src, g_src}, n_opt)};
      const bool ok = check_homomorphism(map, parse_poly(f_src, map.n), parse_poly(g_src, map.n));
      out.result = {{"map", std::string(to_string(map.kind))}, {"homomorphism", ok}};
      out.line(verdict(ok));
      if (!ok) out.fail("Q({F,G}) differs from (1/i hbar)[Q(F), Q(G)]");
    });
  }

  // ------------------------------------------------------------ dispatch
  RunReport report;
  std::string path;
  auto finish = [&](const std::string& status, Out& out) {
    report.exit_code = out.exit_code;
    report.record = {{"command", path},
                     {"status", status},
                     {"result", std::move(out.result)},
                     {"diagnostics", std::move(out.diagnostics)}};
    std::string text;
    for (const auto& l : out.lines) text += l + "\n";
    for (const auto& d : report.record["diagnostics"]) text += "error: " + d.get<std::string>() + "\n";
    report.text = std::move(text);
    // Format is known only after a successful parse; scan for it so errors render correctly too.
    for (std::size_t k = 0; k + 1 < args.size(); ++k)
      if (args[k] == "--format" && args[k + 1] == "json") report.json = true;
    for (const auto& a : args)
      if (a == "--format=json") report.json = true;
    return report;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, es;
    const int code = app.exit(e, os, es);
    Out out;
    report.json = false;
    if (code == 0) {
      std::string help = os.str();
      if (!help.empty() && help.back() == '\n') help.pop_back();
      out.line(help);
      return finish("ok", out);
    }
    out.exit_code = 2;
    out.diagnostics.push_back(e.what());
    return finish("usage-error", out);
  }

  Out out;
  const Command* chosen = nullptr;
  for (const auto& c : commands)
    if (c.app->parsed()) {
      chosen = &c;
      path.clear();
      for (const CLI::App* a = c.app; a != nullptr && a != &app; a = a->get_parent())
        path = a->get_name() + (path.empty() ? "" : " " + path);
    }
  if (chosen == nullptr) {
    out.exit_code = 2;
    out.diagnostics.push_back("no subcommand given");
    return finish("usage-error", out);
  }

  auto error = [&](int code, const std::string& status, const std::exception& e) {
    Out err;
    err.exit_code = code;
    err.diagnostics.push_back(e.what());
    return finish(status, err);
  };
  try {
    chosen->run(out);
  } catch (const ParseError& e) {
    return error(2, "parse-error", e);
  } catch (const DomainViolation& e) {
    return error(1, "domain-violation", e);
  } catch (const NotDivisible& e) {
    return error(1, "not-divisible", e);
  } catch (const NoPointsFound& e) {
    return error(1, "no-points-found", e);
  } catch (const DimensionMismatch& e) {
    return error(2, "dimension-mismatch", e);
  } catch (const std::exception& e) {
    return error(2, "usage-error", e);
  }
  return finish(out.exit_code == 0 ? "ok" : "check-failed", out);
}

}  // namespace canonq::cli
