#include "tpk/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>
#include <thread>

#include <CLI11.hpp>

#include "tpk/divergences.hpp"
#include "tpk/errors.hpp"
#include "tpk/extremal.hpp"
#include "tpk/pinsker.hpp"
#include "tpk/records.hpp"
#include "tpk/simplex.hpp"
#include "tpk/tsallis.hpp"
#include "tpk/verify.hpp"

namespace tpk::cli {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = s.find(sep, start);
    parts.push_back(s.substr(start, end - start));
    if (end == std::string_view::npos) return parts;
    start = end + 1;
  }
}

std::vector<double> parse_reals(std::string_view s, std::string_view what) {
  std::vector<double> xs;
  for (auto part : split(s, ',')) {
    try {
      xs.push_back(parse_real(part));
    } catch (const ParameterError&) {
      throw ParameterError(std::string(what) + ": '" + std::string(part) +
                           "' is not a real number");
    }
  }
  return xs;
}

std::vector<int> parse_dims(std::string_view s) {
  std::vector<int> Ks;
  for (auto part : split(s, ',')) {
    const long long K = parse_integer(part);
    if (K < 2 || K > 1'000'000)
      throw ParameterError("K must be an integer in [2, 1000000], got " + std::string(part));
    Ks.push_back(static_cast<int>(K));
  }
  return Ks;
}

std::vector<std::vector<double>> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open vector file '" + path + "'");
  std::vector<std::vector<double>> vectors;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<double> v;
    std::string token;
    while (fields >> token) {
      if (token[0] == '#') break;
      v.push_back(parse_real(token));
    }
    if (!v.empty()) vectors.push_back(std::move(v));
  }
  return vectors;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "table") return Format::Text;
  throw ParameterError("unknown format '" + s + "'");
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (!env || !*env) return 42;
  const long long v = parse_integer(env);
  if (v < 0) throw ParameterError(std::string(kSeedEnv) + " must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

struct Output {
  std::string format = "csv";
  std::string path;

  void emit(const Table& table, std::ostream& out) const {
    const Format f = parse_format(format);
    if (path.empty()) {
      write_table(out, table, f);
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ParameterError("cannot write '" + path + "'");
    write_table(file, table, f);
  }
};

void add_output_options(CLI::App& cmd, Output& o) {
  cmd.add_option("--format", o.format, "csv, json (JSON lines) or table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  cmd.add_option("--output", o.path, "Write records to this file instead of stdout");
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string alpha;
  std::string p, q, vectors;
  bool orthant = false;
  Output output;
};

std::vector<double> checked(std::vector<double> v, bool orthant, const char* name) {
  const auto problem = orthant ? orthant_violation(v) : simplex_violation(v, Support::Relint);
  if (problem)
    throw ParameterError(std::string(name) +
                         (orthant ? ": not a positive vector: " : ": not a probability vector: ") +
                         *problem);
  return v;
}

void eval_pair(Table& t, long long index, const AlphaParam& alpha,
               const std::vector<double>& pv, const std::vector<double>& qv,
               bool orthant) {
  const Cell a = alpha.value();
  const auto row = [&](const char* quantity, double value, std::string note = {}) {
    t.add({index, a, std::string(quantity), value,
           note.empty() ? Cell(std::monostate{}) : Cell(std::move(note))});
  };
  const PositiveVector p(pv), q(qv);
  row("entropy_p", entropy(alpha, p));
  row("entropy_q", entropy(alpha, q));
  const double d = bregman(alpha, p, q).value;
  row("D_alpha", d);
  row("D_alpha_definition", bregman_from_definition(alpha, p, q).value);
  row("itakura_saito", itakura_saito(p, q));
  row("half_squared_euclidean", half_squared_euclidean(pv, qv));
  const double l1 = l1_distance(pv, qv);
  row("l1", l1);
  if (orthant) {
    if (alpha.value() == 2.0 && l1 > 0.0)
      row("ratio", 2.0 * d / (l1 * l1), "orthant constant " +
                                           format_real(orthant_constant_alpha2(
                                               static_cast<int>(pv.size()))));
    return;
  }
  const ProbVector ps(pv), qs(qv);
  row("bayes_risk_p", bayes_risk(alpha, ps));
  double risk = 0.0;
  for (std::size_t k = 0; k < ps.dim(); ++k) risk += ps[k] * loss(alpha, qs, k);
  row("expected_loss_q", risk);
  row("excess_risk", excess_risk(alpha, ps, qs));
  row("kl", kl_divergence(ps, qs));
  row("reverse_kl", reverse_kl(ps, qs));
  if (!alpha.is(AlphaAnchor::Zero) && !alpha.is(AlphaAnchor::One)) {
    const auto tre = tsallis_relative_entropy(alpha, ps, qs);
    row("tsallis_relative_entropy", tre.value, tre.extended_domain ? "extended-domain" : "");
  }
  row("tv", tv_distance(ps, qs));
  row("zero_one_regret", zero_one_regret_bound(ps, qs));
  const auto c = sharp_constant(alpha, static_cast<int>(ps.dim()));
  row("sharp_constant", c.value, std::string(to_string(c.regime)));
  if (l1 > 0.0) row("ratio", 2.0 * d / (l1 * l1));
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
  if (!args.vectors.empty()) {
    if (!args.p.empty() || !args.q.empty())
      throw ParameterError("give either --p/--q or --vectors, not both");
    auto vs = read_vector_file(args.vectors);
    if (vs.empty() || vs.size() % 2 != 0)
      throw ParameterError("vector file must hold an even number of vectors (p, q, p, q, …)");
    for (std::size_t i = 0; i < vs.size(); i += 2) pairs.emplace_back(vs[i], vs[i + 1]);
  } else {
    if (args.p.empty() || args.q.empty())
      throw ParameterError("eval needs --p and --q, or --vectors");
    pairs.emplace_back(parse_reals(args.p, "--p"), parse_reals(args.q, "--q"));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& [p, q] = pairs[i];
    const std::string tag = pairs.size() > 1 ? " (pair " + std::to_string(i) + ")" : "";
    p = checked(std::move(p), args.orthant, ("p" + tag).c_str());
    q = checked(std::move(q), args.orthant, ("q" + tag).c_str());
    if (p.size() != q.size())
      throw ParameterError("p and q have different dimensions" + tag);
  }
  Table t({"pair", "alpha", "quantity", "value", "note"});
  for (double a : parse_reals(args.alpha, "--alpha"))
    for (std::size_t i = 0; i < pairs.size(); ++i)
      eval_pair(t, static_cast<long long>(i), AlphaParam(a), pairs[i].first,
                pairs[i].second, args.orthant);
  args.output.emit(t, out);
  return kExitOk;
}

// ---- constant --------------------------------------------------------------

struct ConstantArgs {
  std::string alpha, K;
  std::optional<double> eps;
  std::string mode = "both";
  Output output;
};

int cmd_constant(const ConstantArgs& args, std::ostream& out) {
  const auto alphas = parse_reals(args.alpha, "--alpha");
  const auto Ks = parse_dims(args.K);
  std::vector<ClipMode> modes;
  if (args.mode == "both" || args.mode == "all") modes.push_back(ClipMode::Both);
  if (args.mode == "p" || args.mode == "all") modes.push_back(ClipMode::POnly);
  if (args.mode == "q" || args.mode == "all") modes.push_back(ClipMode::QOnly);

  Table t({"alpha", "K", "C", "regime", "sigma", "eps", "mode", "clipped"});
  for (double a : alphas) {
    const AlphaParam alpha(a);
    for (int K : Ks) {
      const auto c = sharp_constant(alpha, K);
      const Cell sigma = c.sigma ? Cell(*c.sigma) : Cell(std::monostate{});
      const auto base = [&]() -> std::vector<Cell> {
        return {a, static_cast<long long>(K), c.value, std::string(to_string(c.regime)),
                sigma};
      };
      if (!args.eps || c.regime != PinskerRegime::AlphaGt2KGe3) {
        auto row = base();
        row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
        t.add(std::move(row));
        continue;
      }
      for (ClipMode m : modes) {
        auto row = base();
        row.insert(row.end(), {*args.eps, std::string(to_string(m)),
                               clipped_constant(a, K, m, *args.eps)});
        t.add(std::move(row));
      }
    }
  }
  args.output.emit(t, out);
  return kExitOk;
}

// ---- figure ------------------------------------------------------------------

struct FigureArgs {
  double alpha_min = -0.5;
  double alpha_max = 4.5;
  double step = 0.005;
  std::string K = "2,3,4,5,10,100,1000";
  Output output;
};

int cmd_figure(const FigureArgs& args, std::ostream& out) {
  if (!(args.step > 0.0)) throw ParameterError("--step must be positive");
  if (!(args.alpha_min <= args.alpha_max))
    throw ParameterError("--alpha-min must not exceed --alpha-max");
  // α_i = i/n with n = 1/step, so grid points such as α = 2 are exact.
  const double n = std::round(1.0 / args.step);
  if (n < 1.0 || std::abs(n * args.step - 1.0) > 1e-9)
    throw ParameterError("--step must be 1/n for a positive integer n");
  const auto first = static_cast<long long>(std::ceil(args.alpha_min * n - 1e-9));
  const auto last = static_cast<long long>(std::floor(args.alpha_max * n + 1e-9));
  Table t({"alpha", "K", "C"});
  for (int K : parse_dims(args.K))
    for (long long i = first; i <= last; ++i) {
      const double a = static_cast<double>(i) / n;
      t.add({a, static_cast<long long>(K), sharp_constant(AlphaParam(a), K).value});
    }
  args.output.emit(t, out);
  return kExitOk;
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string alpha = "-1,0,0.5,1,1.5,2,2.5,3";
  std::string K = "2,3,4,5";
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  double slack = 1e-12;
  double delta = 1e-6;
  double corrupt = 1.0;
  unsigned threads = 0;
  bool omit_timing = false;
  Output output;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  GridSpec spec;
  if (args.suite == "constant") spec.suite = Suite::Constant;
  else if (args.suite == "quadratic") spec.suite = Suite::Quadratic;
  else if (args.suite == "identities") spec.suite = Suite::Identities;
  else spec.suite = Suite::All;
  spec.alphas = parse_reals(args.alpha, "--alpha");
  for (double a : spec.alphas) (void)AlphaParam(a);
  spec.Ks = parse_dims(args.K);
  if (args.samples < 1) throw ParameterError("--samples must be at least 1");
  spec.n_samples = args.samples;
  spec.seed = args.seed;
  spec.options.slack = args.slack;
  spec.options.delta = args.delta;
  spec.options.constant_scale = args.corrupt;
  const unsigned threads =
      args.threads ? args.threads : std::max(1u, std::thread::hardware_concurrency());

  const auto reports = run_grid(spec, threads);
  args.output.emit(reports_table(reports, !args.omit_timing), out);

  int status = kExitOk;
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      if (c.passed()) continue;
      status = kExitViolation;
      err << "violation: suite=" << r.suite;
      if (r.alpha) err << " alpha=" << format_real(*r.alpha);
      if (r.K) err << " K=" << *r.K;
      err << " check=" << c.name << " violations=" << c.violations
          << " max_gap=" << format_real(c.max_gap)
          << " tolerance=" << format_real(c.tolerance) << '\n';
    }
  }
  return status;
}

// ---- witness -----------------------------------------------------------------

struct WitnessArgs {
  std::string kind;
  double alpha = 0.0;
  int K = 0;
  std::string t;
  double delta = 1e-6;
  Output output;
};

WitnessKind parse_kind(const std::string& s) {
  if (s == "sharpness") return WitnessKind::Sharpness;
  if (s == "no-pinsker") return WitnessKind::NoPinsker;
  if (s == "orthant") return WitnessKind::OrthantGeneral;
  if (s == "orthant-alpha2") return WitnessKind::OrthantAlpha2;
  throw ParameterError("unknown witness kind '" + s + "'");
}

std::vector<double> default_ts(const WitnessFamily& f) {
  std::vector<double> grid;
  switch (f.kind) {
    case WitnessKind::Sharpness:
      grid = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
      break;
    case WitnessKind::NoPinsker:
      grid = {1e-2, 1e-3, 1e-4};
      break;
    case WitnessKind::OrthantAlpha2:
      grid = {0.5, 1.0, 2.0};
      break;
    case WitnessKind::OrthantGeneral:
      grid = f.alpha < 2.0 ? std::vector<double>{10.0, 100.0, 1000.0}
                           : std::vector<double>{1e-1, 1e-2, 1e-3};
      break;
  }
  std::erase_if(grid, [&](double t) { return !(t > f.t_lo && t < f.t_hi); });
  return grid;
}

int cmd_witness(const WitnessArgs& args, std::ostream& out) {
  if (args.K < 2) throw ParameterError("K must be at least 2");
  const auto family = make_witness_family(parse_kind(args.kind), args.alpha, args.K, args.delta);
  const auto ts = args.t.empty() ? default_ts(family) : parse_reals(args.t, "--t");
  Table t({"kind", "alpha", "K", "t", "p", "q", "ratio", "predicted"});
  for (double x : ts) {
    const auto w = family.evaluate(x);
    t.add({std::string(to_string(family.kind)), family.alpha,
           static_cast<long long>(family.K), w.t, join_reals(w.p), join_reals(w.q),
           w.ratio, w.predicted});
  }
  args.output.emit(t, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tsallis entropy, Bregman divergences and sharp Pinsker constants"};
  app.name(argc > 0 ? std::filesystem::path(argv[0]).filename().string() : "tpk");
  app.require_subcommand(1, 1);

  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  EvalArgs eval;
  auto* ev = app.add_subcommand("eval", "Entropies, losses and divergences of p and q");
  ev->add_option("--alpha", eval.alpha, "alpha, or a comma-separated list")->required();
  ev->add_option("--p", eval.p, "Comma-separated coordinates of p");
  ev->add_option("--q", eval.q, "Comma-separated coordinates of q");
  ev->add_option("--vectors", eval.vectors,
                 "File with one whitespace-separated vector per line, read as p, q, p, q, …");
  ev->add_flag("--orthant", eval.orthant, "Accept positive vectors instead of simplex points");
  add_output_options(*ev, eval.output);

  ConstantArgs constant;
  auto* co = app.add_subcommand("constant", "Sharp Pinsker constants C_{alpha,K}");
  co->add_option("--alpha", constant.alpha, "alpha, or a comma-separated list")->required();
  co->add_option("--K", constant.K, "K, or a comma-separated list")->required();
  co->add_option("--eps", constant.eps, "Clipping level for alpha > 2, K >= 3");
  co->add_option("--mode", constant.mode, "Clipping mode: both, p, q or all")
      ->check(CLI::IsMember({"both", "p", "q", "all"}));
  add_output_options(*co, constant.output);

  VerifyArgs verify;
  verify.seed = seed;
  auto* ve = app.add_subcommand("verify", "Run the verification harness over a grid");
  ve->add_option("--suite", verify.suite, "constant, quadratic, identities or all")
      ->check(CLI::IsMember({"constant", "quadratic", "identities", "all"}));
  ve->add_option("--alpha", verify.alpha, "Comma-separated alpha grid");
  ve->add_option("--K", verify.K, "Comma-separated K grid");
  ve->add_option("--samples", verify.samples, "Samples per cell");
  ve->add_option("--seed", verify.seed, "Base seed (default: $TPK_SEED or 42)");
  ve->add_option("--slack", verify.slack, "Absolute slack on ratios");
  ve->add_option("--delta", verify.delta, "Boundary surrogate margin");
  ve->add_option("--threads", verify.threads, "Worker threads (default: all cores)");
  ve->add_option("--corrupt-constant", verify.corrupt,
                 "Multiply every closed form by this factor (tests the failure path)");
  ve->add_flag("--omit-timing", verify.omit_timing, "Leave elapsed_ms empty");
  add_output_options(*ve, verify.output);

  WitnessArgs witness;
  auto* wi = app.add_subcommand("witness", "Trajectories of witness families");
  wi->add_option("--kind", witness.kind, "sharpness, no-pinsker, orthant or orthant-alpha2")
      ->required()
      ->check(CLI::IsMember({"sharpness", "no-pinsker", "orthant", "orthant-alpha2"}));
  wi->add_option("--alpha", witness.alpha, "alpha")->required();
  wi->add_option("--K", witness.K, "K")->required();
  wi->add_option("--t", witness.t, "Comma-separated t values (default: per-kind grid)");
  wi->add_option("--delta", witness.delta, "Boundary surrogate margin");
  add_output_options(*wi, witness.output);

  FigureArgs figure;
  auto* fi = app.add_subcommand("figure", "C_{alpha,K} on a dense alpha grid (CSV alpha,K,C)");
  fi->add_option("--alpha-min", figure.alpha_min, "Grid start");
  fi->add_option("--alpha-max", figure.alpha_max, "Grid end");
  fi->add_option("--step", figure.step, "Grid step, 1/n for an integer n");
  fi->add_option("--K", figure.K, "Comma-separated K list");
  add_output_options(*fi, figure.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ev->parsed()) return cmd_eval(eval, out);
    if (co->parsed()) return cmd_constant(constant, out);
    if (ve->parsed()) return cmd_verify(verify, out, err);
    if (wi->parsed()) return cmd_witness(witness, out);
    if (fi->parsed()) return cmd_figure(figure, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tpk::cli
