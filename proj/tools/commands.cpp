#include <algorithm>
#include <memory>

#include "cli.hpp"
#include "dioph/constructions.hpp"
#include "dioph/contfrac.hpp"
#include "dioph/counting.hpp"
#include "dioph/dimension.hpp"
#include "dioph/dirichlet.hpp"
#include "dioph/errors.hpp"
#include "dioph/lattice.hpp"
#include "dioph/measure.hpp"

namespace cli {

using namespace dioph;

json scalar_json(const Scalar& s, int digits) {
  json j = {{"approx", s.approx(digits)}, {"spec", s.str()}};
  return j;
}

json bigint_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return json(to_i64(x));
  return json(to_string(x));
}

namespace {

// Shortest text that reads back to the same double.
std::string shortest(double x) { return json(x).dump(); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t k = text.find(sep, start);
    out.push_back(text.substr(start, k - start));
    if (k == std::string::npos) break;
    start = k + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const std::string& what) {
  auto parts = split(text, ':');
  require(parts.size() == 2, what + " must be M:N");
  std::uint64_t M = parse_u64(parts[0], what), N = parse_u64(parts[1], what);
  require(M < N, what + " must satisfy M < N");
  return {M, N};
}

std::size_t msb(const Rational& r) {
  return std::max(boost::multiprecision::msb(abs(num(r)) + 1), boost::multiprecision::msb(den(r)));
}

json estimate_json(const MeasureEstimate& e) {
  return {{"estimate", e.estimate}, {"ci95", e.ci95},           {"hits", e.hits},
          {"samples", e.samples},   {"undecided", e.undecided}};
}

json dimension_json(const DimensionEstimate& e, int digits) {
  json j = {{"slope", e.slope}, {"residual", e.residual}, {"levels", e.levels}, {"counts", e.counts}};
  j["target"] = e.target ? scalar_json(*e.target, digits) : json(nullptr);
  return j;
}

void emit_dimension(Output& out, const DimensionEstimate& e, json extra) {
  json summary = dimension_json(e, out.digits());
  summary.update(extra);
  out.record("dimension", summary);
  if (out.format() == Format::Csv) {
    out.csv_note("summary", summary);
    out.csv_header({"level", "count"});
    for (std::size_t k = 0; k < e.levels.size(); ++k)
      out.csv_row({std::to_string(e.levels[k]), std::to_string(e.counts[k])});
  }
}

json persistence_json(const PersistenceReport& r) {
  json curve = json::array();
  for (const auto& p : r.curve) {
    json c = estimate_json(p.estimate);
    c["Q0"] = p.Q0;
    c["Q1"] = p.Q1;
    curve.push_back(c);
  }
  return {{"any", estimate_json(r.any)}, {"persistence", estimate_json(r.persistence)}, {"curve", curve}};
}

void emit_curve(Output& out, const PersistenceReport& r) {
  out.csv_header({"Q1", "estimate"});
  for (const auto& p : r.curve) out.csv_row({std::to_string(p.Q1), shortest(p.estimate.estimate)});
}

// Sampling options shared by measure, fibre and twisted.
struct Sampling {
  ExperimentConfig cfg;
  void add(CLI::App* sub, bool with_n) {
    if (with_n) sub->add_option("--n", cfg.n, "dimension of the sampled point");
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
    sub->add_option("--Q0", cfg.Q0, "scan q > Q0");
    sub->add_option("--Qmax", cfg.Qmax, "scan q <= Qmax");
    sub->add_option("--P", cfg.P, "persistence blocks below Qmax");
    sub->add_option("--workers", cfg.workers, "worker threads");
  }
  ExperimentConfig with_seed(std::uint64_t seed) const {
    ExperimentConfig c = cfg;
    c.seed = seed;
    return c;
  }
};

Command cf_command(CLI::App& app) {
  auto* sub = app.add_subcommand("cf", "continued fraction expansion and convergents");
  auto x = std::make_shared<std::string>();
  auto depth = std::make_shared<std::size_t>(32);
  sub->add_option("--x", *x, "scalar spec: rat:p/q, surd:a,b,c,D, dec:<digits>[:err] or a literal")->required();
  sub->add_option("--depth", *depth, "maximum number of partials")->check(CLI::Range(1, 1'000'000));
  Command c{sub, [x, depth](Output& out) {
              Scalar v = parse_scalar(*x);
              CFExpansion cf = cf_expand(v, *depth);
              std::size_t k = std::min(*depth, cf.depth());
              json partials = json::array(), expansion = json::array({bigint_json(cf.a0)}), conv = json::array();
              for (std::size_t j = 1; j <= k; ++j) {
                partials.push_back(bigint_json(cf.partial(j)));
                expansion.push_back(bigint_json(cf.partial(j)));
              }
              for (const auto& pq : convergents(cf, k)) conv.push_back({{"p", bigint_json(pq.p)}, {"q", bigint_json(pq.q)}});
              json r = {{"a0", bigint_json(cf.a0)}, {"partials", partials},       {"expansion", expansion},
                        {"status", to_string(cf.status)}, {"convergents", conv}};
              if (cf.status == CFStatus::PeriodicFrom) {
                r["period_start"] = cf.period_start;
                r["period_length"] = cf.period_length;
              }
              out.record("expansion", r);
            }};
  return c;
}

Command dirichlet_command(CLI::App& app) {
  auto* sub = app.add_subcommand("dirichlet", "Dirichlet constant c(Q) and Bad profile m(Q)");
  struct Opts {
    std::string alpha, weights, schedule;
    unsigned workers = 1;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--alpha", o->alpha, "';'-separated scalar specs")->required();
  sub->add_option("--weights", o->weights, "comma-separated weights summing to 1 (default uniform)");
  sub->add_option("--schedule", o->schedule, "comma-separated Q values")->required();
  sub->add_option("--workers", o->workers, "worker threads");
  Command c{sub, [o](Output& out) {
              auto alpha = parse_alpha(o->alpha);
              WeightVector w = o->weights.empty() ? WeightVector::uniform(alpha.size()) : WeightVector::parse(o->weights);
              auto schedule = parse_u64_list(o->schedule, "schedule");
              ProfileSeries cs = dirichlet_profile(alpha, w, schedule, o->workers);
              ProfileSeries ms = bad_profile(alpha, w, schedule, o->workers);
              out.csv_header({"Q", "c", "m"});
              for (std::size_t k = 0; k < schedule.size(); ++k) {
                out.csv_row({std::to_string(schedule[k]), cs.values[k].approx(out.digits()),
                             ms.values[k].approx(out.digits())});
                out.record("profile", {{"Q", schedule[k]},
                                       {"c", scalar_json(cs.values[k], out.digits())},
                                       {"c_witness", cs.witnesses[k]},
                                       {"m", scalar_json(ms.values[k], out.digits())},
                                       {"m_witness", ms.witnesses[k]}});
              }
            },
            Format::Csv, true};
  return c;
}

Command count_command(CLI::App& app) {
  auto* sub = app.add_subcommand("count", "simultaneous approximation counts against their bounds");
  struct Opts {
    std::string alpha, delta, range, tau;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--alpha", o->alpha, "';'-separated scalar specs")->required();
  sub->add_option("--delta", o->delta, "scalar spec, 0 < delta < 1/2")->required();
  sub->add_option("--range", o->range, "M:N, counts q in (M, N]")->required();
  sub->add_option("--tau", o->tau, "exponent for the upper bound check");
  Command c{sub, [o](Output& out) {
              auto alpha = parse_alpha(o->alpha);
              Scalar delta = parse_scalar(o->delta);
              auto [M, N] = parse_range(o->range, "range");
              int d = out.digits();
              auto report = [d](const CountReport& r) {
                return json{{"ell", r.ell},
                            {"N", r.N},
                            {"count", r.count},
                            {"bound_lower", scalar_json(r.bound_lower, d)},
                            {"bound_upper", scalar_json(r.bound_upper, d)},
                            {"lower_applicable", r.lower_applicable},
                            {"lower_reason", r.lower_reason},
                            {"lower_holds", r.lower_holds},
                            {"upper_applicable", r.upper_applicable},
                            {"upper_reason", r.upper_reason},
                            {"upper_holds", r.upper_holds}};
              };
              json r = {{"M", M}, {"N", N}, {"count", count_sim(alpha, delta, M, N)}};
              r["lower_check"] = report(lower_bound_check(alpha, delta, N));
              if (!o->tau.empty()) r["upper_check"] = report(upper_bound_check(alpha, parse_scalar(o->tau), N, delta));
              out.record("count", r);
            }};
  return c;
}

json vector_json(const std::vector<Scalar>& v, int digits) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_json(s, digits));
  return a;
}

Command lattice_command(CLI::App& app) {
  auto* sub = app.add_subcommand("lattice", "successive minima, duals, flow lattices and linear forms");
  struct Opts {
    std::string basis, flow, triangularize;
    bool minima = false, dual = false, minkowski = false;
    std::uint64_t covering = 0;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--basis", o->basis, "rows separated by ';', entries by ','");
  sub->add_flag("--minima", o->minima, "successive minima in the sup norm");
  sub->add_flag("--dual", o->dual, "dual basis and its minima");
  sub->add_flag("--minkowski", o->minkowski, "Minkowski second theorem check");
  sub->add_option("--covering", o->covering, "covering radius bounds from this many sample points");
  sub->add_option("--flow", o->flow, "alpha,N,delta with alpha ';'-separated");
  sub->add_option("--triangularize", o->triangularize, "comma-separated integer row");
  Command c{sub, [o](Output& out) {
              int d = out.digits();
              auto minima_json = [d](const MinimaResult& m) {
                json z = json::array();
                for (const auto& v : m.coefficients) z.push_back(v);
                json w = json::array();
                for (const auto& v : m.witnesses) w.push_back(vector_json(v, d));
                return json{{"minima", vector_json(m.minima, d)}, {"coefficients", z}, {"witnesses", w},
                            {"candidates", m.candidates}};
              };
              bool need_basis = o->minima || o->dual || o->minkowski || o->covering;
              bool any = need_basis || !o->flow.empty() || !o->triangularize.empty();
              if (!o->basis.empty() && !any) {
                o->minima = true;
                need_basis = any = true;
              }
              require(any, "lattice needs --basis or one of --flow, --triangularize");
              require(!need_basis || !o->basis.empty(), "this lattice action needs --basis");
              if (need_basis) {
                Basis b = Basis::parse(o->basis);
                if (o->minima) {
                  json r = minima_json(successive_minima(b));
                  r["basis"] = b.str();
                  r["det"] = scalar_json(b.determinant(), d);
                  out.record("minima", r);
                }
                if (o->dual) {
                  Basis db = dual_lattice(b);
                  json r = minima_json(successive_minima(db));
                  r["basis"] = db.str();
                  r["det"] = scalar_json(db.determinant(), d);
                  out.record("dual", r);
                }
                if (o->minkowski) {
                  MinkowskiReport m = minkowski_second_check(b);
                  out.record("minkowski", {{"product", scalar_json(m.product, d)},
                                           {"lower", scalar_json(m.lower, d)},
                                           {"upper", scalar_json(m.upper, d)},
                                           {"pass", m.pass},
                                           {"literal_lower", scalar_json(m.literal_lower, d)},
                                           {"literal_upper", scalar_json(m.literal_upper, d)},
                                           {"literal_pass", m.literal_pass}});
                }
                if (o->covering) {
                  CoveringReport cr = covering_radius_bounds(b, o->covering);
                  out.record("covering", {{"upper", scalar_json(cr.upper, d)},
                                          {"empirical_lower", static_cast<double>(cr.empirical_lower)},
                                          {"mu_m", scalar_json(cr.mu_m, d)},
                                          {"upper_holds", cr.upper_holds},
                                          {"lemma_holds", cr.lemma_holds},
                                          {"grid_per_axis", cr.grid_per_axis}});
                }
              }
              if (!o->flow.empty()) {
                auto parts = split(o->flow, ',');
                require(parts.size() >= 3, "flow spec is alpha,N,delta");
                std::string alpha_text = parts[0];
                for (std::size_t k = 1; k + 2 < parts.size(); ++k) alpha_text += "," + parts[k];
                auto alpha = parse_alpha(alpha_text);
                std::uint64_t N = parse_u64(parts[parts.size() - 2], "flow N");
                Scalar delta = parse_scalar(trim(parts.back()));
                FlowLattice f = flow_lattice(alpha, N, delta);
                json r = minima_json(successive_minima(f.basis));
                r["basis"] = f.basis.str();
                r["R"] = scalar_json(f.R, d);
                r["scale"] = scalar_json(f.scale, d);
                r["contract"] = scalar_json(f.contract, d);
                out.record("flow", r);
              }
              if (!o->triangularize.empty()) {
                std::vector<BigInt> row;
                for (const auto& s : split(o->triangularize, ',')) {
                  Rational v = parse_rational(trim(s));
                  require(den(v) == 1, "triangularize row entries must be integers");
                  row.push_back(num(v));
                }
                Triangularization t = unimodular_triangularize(row);
                json B = json::array();
                for (const auto& r : t.B) {
                  json jr = json::array();
                  for (const auto& x : r) jr.push_back(bigint_json(x));
                  B.push_back(jr);
                }
                out.record("triangularize", {{"B", B}, {"gcd", bigint_json(t.g)}, {"steps", t.steps}});
              }
            }};
  return c;
}

Command measure_command(CLI::App& app, const Globals& g) {
  auto* sub = app.add_subcommand("measure", "Monte Carlo measure experiments");
  struct Opts {
    std::string experiment = "khintchine", psi, radius;
    Sampling s;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--experiment", o->experiment, "ubiquity, khintchine or block")
      ->check(CLI::IsMember({"ubiquity", "khintchine", "block"}));
  sub->add_option("--psi", o->psi, "approximating function: power:tau, scaled:c,tau, logpow:a,b, psik:k,n, ...");
  sub->add_option("--radius", o->radius, "ball radius coef,expo meaning coef q^-expo (block experiment)");
  sub->add_option("--k", o->s.cfg.k, "ubiquity base");
  sub->add_option("--j0", o->s.cfg.j0, "first ubiquity block");
  sub->add_option("--j1", o->s.cfg.j1, "last ubiquity block");
  o->s.add(sub, true);
  Command c{sub, [o, &g](Output& out) {
              ExperimentConfig cfg = o->s.with_seed(g.seed);
              int d = out.digits();
              if (o->experiment == "ubiquity") {
                UbiquityReport r = ubiquity_check(cfg);
                out.csv_header({"j", "estimate"});
                for (const auto& b : r.blocks) {
                  json rec = estimate_json(b.estimate);
                  rec.update({{"experiment", "ubiquity"}, {"j", b.j}, {"Q0", b.Q0}, {"Q1", b.Q1},
                              {"radius", scalar_json(b.radius, d)}, {"meets_half", b.meets_half}});
                  out.record("block", rec);
                  out.csv_row({std::to_string(b.j), shortest(b.estimate.estimate)});
                }
                out.record("summary", {{"experiment", "ubiquity"}, {"k", r.k}, {"in_hypothesis", r.in_hypothesis},
                                       {"min_estimate", r.min_estimate}, {"all_meet_half", r.all_meet_half}});
                return;
              }
              if (o->experiment == "block") {
                require(o->radius.empty() != o->psi.empty(), "block experiment needs exactly one of --radius, --psi");
                BallRadius radius = BallRadius::from_psi(ApproxFunction::power(Scalar(1)));
                if (!o->radius.empty()) {
                  auto parts = split(o->radius, ',');
                  require(parts.size() == 2, "radius spec is coef,expo");
                  radius = BallRadius::power(parse_scalar(trim(parts[0])), parse_scalar(trim(parts[1])));
                } else {
                  radius = BallRadius::from_psi(parse_approx(o->psi));
                }
                MeasureEstimate e = block_hit_measure(radius, cfg.n, cfg.Q0, cfg.Qmax, cfg);
                json rec = estimate_json(e);
                rec.update({{"experiment", "block"}, {"radius", radius.str()}});
                out.record("estimate", rec);
                out.csv_header({"Q1", "estimate"});
                out.csv_row({std::to_string(cfg.Qmax), shortest(e.estimate)});
                return;
              }
              require(!o->psi.empty(), "khintchine experiment needs --psi");
              KhintchineReport r = khintchine_experiment(parse_approx(o->psi), cfg);
              json rec = persistence_json(r.result);
              rec.update(estimate_json(r.result.any));
              rec["experiment"] = "khintchine";
              rec["tail_bound"] = r.tail_bound ? scalar_json(*r.tail_bound, d) : json(nullptr);
              rec["tail_from"] = r.tail_from;
              out.record("estimate", rec);
              emit_curve(out, r.result);
            },
            Format::Json, true};
  return c;
}

Command dimension_command(CLI::App& app) {
  auto* sub = app.add_subcommand("dimension", "box-counting dimension estimates");
  struct Opts {
    std::string experiment = "jb", tau = "2", alpha;
    std::uint64_t Q0 = 0, Q1 = 1 << 10;
    unsigned L0 = 0, L1 = 0, m = 1, workers = 1;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--experiment", o->experiment, "cantor, jb or fibre")
      ->check(CLI::IsMember({"cantor", "jb", "fibre"}));
  sub->add_option("--tau", o->tau, "exponent tau (jb, fibre)");
  sub->add_option("--alpha", o->alpha, "fibre base point, ';'-separated");
  sub->add_option("--m", o->m, "fibre dimension");
  sub->add_option("--Q0", o->Q0, "q > Q0");
  sub->add_option("--Q1", o->Q1, "q <= Q1");
  sub->add_option("--L0", o->L0, "first level (default L1 / 2)");
  sub->add_option("--L1", o->L1, "last level (default: matched to Q1; 14 for cantor)");
  sub->add_option("--workers", o->workers, "worker threads (cantor)");
  Command c{sub, [o](Output& out) {
              if (o->experiment == "cantor") {
                unsigned L1 = o->L1 ? o->L1 : 14;
                unsigned L0 = o->L0 ? o->L0 : L1 / 2;
                DimensionEstimate e = box_dimension(cantor_indicator(), L0, L1, o->workers);
                e.target = log_scalar(Scalar(2)) / log_scalar(Scalar(3));
                emit_dimension(out, e, {{"experiment", "cantor"}});
                return;
              }
              Scalar tau = parse_scalar(o->tau);
              unsigned L1 = o->L1 ? o->L1 : matched_level(tau, o->Q1);
              unsigned L0 = o->L0 ? o->L0 : L1 / 2;
              if (o->experiment == "jb") {
                emit_dimension(out, jb_experiment(tau, o->Q0, o->Q1, L0, L1), {{"experiment", "jb"}});
                return;
              }
              require(!o->alpha.empty(), "fibre dimension needs --alpha");
              FibreDimReport r = fibre_dim_experiment(parse_alpha(o->alpha), o->m, tau, o->Q0, o->Q1, L0, L1);
              emit_dimension(out, r.estimate, {{"experiment", "fibre"}, {"support", r.support}});
            },
            Format::Json, true};
  return c;
}

Command ds_command(CLI::App& app) {
  auto* sub = app.add_subcommand("duffin-schaeffer", "counterexample blocks and totient sums");
  struct Opts {
    unsigned imax = 2, workers = 1;
    std::uint64_t totient = 0;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--imax", o->imax, "number of blocks (<= 4)");
  sub->add_option("--totient", o->totient, "also report sum_{q <= Q} phi(q)/q for this Q");
  sub->add_option("--workers", o->workers, "worker threads for verification");
  Command c{sub, [o](Output& out) {
              int d = out.digits();
              DSFamily fam = ds_sequence(o->imax);
              auto rep = ds_verify(fam, o->workers);
              for (std::size_t k = 0; k < rep.size(); ++k) {
                const DSBlockReport& r = rep[k];
                json rec = {{"i", r.i},
                            {"first_prime", r.first_prime},
                            {"last_prime", r.last_prime},
                            {"prime_count", r.prime_count},
                            {"log_product_lo", fam.certificates[k].log_product_lo.to_string(20)},
                            {"log_target_hi", fam.certificates[k].target_hi.to_string(20)},
                            {"divergence", scalar_json(r.divergence, d)},
                            {"divergence_ok", r.divergence_ok},
                            {"totient_bound", scalar_json(r.totient_bound, d)},
                            {"totient_ok", r.totient_ok},
                            {"measure", to_string(r.measure)}};
                if (r.i == 1) rec["N"] = to_string(fam.blocks[0].value());
                out.record("block", rec);
              }
              if (o->totient) {
                TotientReport t = totient_sum(o->totient);
                Scalar s(t.sum);
                // The exact sum has a denominator near the primorial of Q.
                json sum = msb(t.sum) < 256 ? scalar_json(s, d) : json{{"approx", s.approx(d)}};
                out.record("totient", {{"Q", o->totient},
                                       {"sum", sum},
                                       {"deviation", scalar_json(t.deviation, d)}});
              }
            }};
  return c;
}

Command fibre_command(CLI::App& app, const Globals& g) {
  auto* sub = app.add_subcommand("fibre", "measure on the fibre over a fixed alpha");
  struct Opts {
    std::string alpha, psi;
    std::size_t m = 1;
    Sampling s;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--alpha", o->alpha, "fixed coordinates, ';'-separated")->required();
  sub->add_option("--psi", o->psi, "approximating function")->required();
  sub->add_option("--m", o->m, "sampled coordinates");
  o->s.add(sub, false);
  Command c{sub, [o, &g](Output& out) {
              auto alpha = parse_alpha(o->alpha);
              ExperimentConfig cfg = o->s.with_seed(g.seed);
              cfg.n = alpha.size() + o->m;
              FibreReport r = fibre_experiment(alpha, parse_approx(o->psi), o->m, cfg);
              json rec = persistence_json(r.result);
              rec.update(estimate_json(r.result.any));
              rec["experiment"] = "fibre";
              rec["support"] = r.support;
              out.record("estimate", rec);
              emit_curve(out, r.result);
            },
            Format::Json, true};
  return c;
}

Command twisted_command(CLI::App& app, const Globals& g) {
  auto* sub = app.add_subcommand("twisted", "inhomogeneous (twisted) approximation");
  struct Opts {
    std::string alpha, weights, psi, mode = "hits";
    unsigned resolution = 64;
    Sampling s;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--alpha", o->alpha, "';'-separated scalar specs")->required();
  sub->add_option("--weights", o->weights, "comma-separated weights summing to 1 (default uniform)");
  sub->add_option("--psi", o->psi, "approximating function (hits mode)");
  sub->add_option("--mode", o->mode, "hits: sampled gamma; constant: uniform constant on a grid")
      ->check(CLI::IsMember({"hits", "constant"}));
  sub->add_option("--resolution", o->resolution, "grid points per axis (constant mode)");
  o->s.add(sub, false);
  Command c{sub, [o, &g](Output& out) {
              auto alpha = parse_alpha(o->alpha);
              WeightVector w = o->weights.empty() ? WeightVector::uniform(alpha.size()) : WeightVector::parse(o->weights);
              ExperimentConfig cfg = o->s.with_seed(g.seed);
              cfg.n = alpha.size();
              int d = out.digits();
              if (o->mode == "constant") {
                UniformConstant u = uniform_constant_estimate(alpha, w, o->resolution, cfg.Qmax, cfg.workers);
                out.record("constant", {{"experiment", "uniform-constant"},
                                        {"c_hat", scalar_json(u.c_hat, d)},
                                        {"argmax", vector_json(u.argmax, d)},
                                        {"minimizer", u.minimizer},
                                        {"grid_points", u.grid_points},
                                        {"undecided", u.undecided}});
                out.csv_header({"c_hat", "minimizer"});
                out.csv_row({u.c_hat.approx(d), std::to_string(u.minimizer)});
                return;
              }
              require(!o->psi.empty(), "twisted hits mode needs --psi");
              PersistenceReport r = twisted_experiment(alpha, w, parse_approx(o->psi), cfg);
              json rec = persistence_json(r);
              rec.update(estimate_json(r.any));
              rec["experiment"] = "twisted";
              out.record("estimate", rec);
              emit_curve(out, r);
            },
            Format::Json, true};
  return c;
}

}  // namespace

std::vector<Scalar> parse_alpha(const std::string& text) {
  std::vector<Scalar> out;
  for (const auto& s : split(text, ';')) out.push_back(parse_scalar(trim(s)));
  return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  require(!t.empty() && t.find_first_not_of("0123456789") == std::string::npos,
          what + " entries must be non-negative integers");
  try {
    return std::stoull(t);
  } catch (const std::out_of_range&) {
    throw InvalidArgument(what + " entry out of range");
  }
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_u64(s, what));
  return out;
}

std::vector<Command> register_commands(CLI::App& app, const Globals& g) {
  return {cf_command(app),      dirichlet_command(app),  count_command(app),      lattice_command(app),
          measure_command(app, g), dimension_command(app), ds_command(app),       fibre_command(app, g),
          twisted_command(app, g)};
}

}  // namespace cli
