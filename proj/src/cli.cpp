#include "enrich/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "enrich/errors.hpp"

namespace enrich {

Format parse_format(const std::string& s) {
  if (s == "auto") return Format::automatic;
  if (s == "tree") return Format::tree;
  if (s == "edges") return Format::edges;
  if (s == "polygon") return Format::polygon;
  if (s == "perm") return Format::perm;
  throw UsageError("unknown format: " + s);
}

std::string serialize(const SampledObject& o, Format f) {
  switch (f) {
    case Format::automatic: {
      std::string s = canonical_text(o);
      if (s.empty() || s.back() != '\n') s += '\n';
      return s;
    }
    case Format::tree:
      if (o.tree.outdeg.empty()) throw UsageError("format tree does not apply to this class");
      return tree_text(o.tree) + "\n";
    case Format::edges:
      if (o.graph.n == 0) throw UsageError("format edges does not apply to this class");
      return edge_list_text(o.graph);
    case Format::polygon:
      if (o.kind != ObjectKind::dissection) throw UsageError("format polygon applies to dissections only");
      return dissection_text(o.dissection);
    case Format::perm:
      if (o.kind != ObjectKind::permutation) throw UsageError("format perm applies to permutations only");
      return permutation_text(o.permutation) + "\n";
  }
  return {};
}

ZetaSpec read_zeta_file(const std::string& path, std::vector<std::size_t> omega) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::vector<Real> probs;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      try {
        probs.emplace_back(tok);
      } catch (const std::exception&) {
        throw UsageError("bad probability in " + path + ": " + tok);
      }
      if (probs.back() < 0) throw UsageError("negative probability in " + path);
    }
  }
  if (probs.empty()) throw UsageError("no probabilities in " + path);
  ZetaSpec z = finite_zeta(std::move(probs), std::move(omega));
  z.name = path;
  return z;
}

namespace {

struct Config {
  std::string cls = "cactus";
  std::size_t size = 0;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::string format = "auto";
  std::string out_path;
  unsigned jobs = 1;
  double t0 = 0;
  double tol = 1e-12;
  int precision = 30;
  std::string zeta = "dissection";
  std::string omega = "0";
  std::string simples;
  std::uint64_t samples = 100000;
  unsigned min_log = 0, max_log = 0;  // 0: class default
  std::size_t reps = 5;
  bool csv = false;
};

std::vector<std::size_t> parse_omega(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoul(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad --omega entry: " + tok);
    }
  }
  return out;
}

ClassSpec build_spec(const Config& c) {
  ClassConfig cfg;
  cfg.id = parse_class_id(c.cls);
  cfg.options.solve.tol = c.tol;
  cfg.options.solve.precision_digits = c.precision;
  if (c.t0 > 0) cfg.options.t0 = c.t0;
  if (cfg.id == ClassId::tree_leaves) {
    if (c.zeta == "dissection")
      cfg.zeta = dissection_zeta();
    else if (c.zeta == "cograph")
      cfg.zeta = cograph_zeta();
    else
      cfg.zeta = read_zeta_file(c.zeta, parse_omega(c.omega));
  }
  if (cfg.id == ClassId::permutation) {
    if (c.simples.empty()) throw UsageError("class permutation needs --simples FILE");
    cfg.simples = SimpleSet::from_file(c.simples);
  }
  return ClassSpec(std::move(cfg));
}

int cmd_sample(const Config& c, std::ostream& out) {
  if (c.size == 0) throw UsageError("--size must be at least 1");
  if (c.count == 0) throw UsageError("--count must be at least 1");
  const Format fmt = parse_format(c.format);
  const ClassSpec spec = build_spec(c);
  const RngStream root(c.seed);
  std::vector<std::string> texts(c.count);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < c.count;) {
      try {
        RngStream rng = root.split(i);
        texts[i] = serialize(spec.sample(c.size, rng), fmt);
      } catch (...) {
        std::lock_guard lk(mu);
        if (!err) err = std::current_exception();
        next = c.count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::min<std::size_t>(c.jobs, c.count); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  const bool multiline = texts.front().find('\n') + 1 < texts.front().size();
  for (std::size_t i = 0; i < c.count; ++i) {
    if (!c.out_path.empty()) {
      const std::string path = c.out_path + "." + std::to_string(i);
      std::ofstream f(path, std::ios::binary);
      if (!(f << texts[i])) throw Error("cannot write " + path);
      continue;
    }
    if (i && multiline) out << "\n";
    out << texts[i];
  }
  return 0;
}

int cmd_count(const Config& c, std::ostream& out) {
  if (c.size == 0) throw UsageError("--size must be at least 1");
  out << build_spec(c).count(c.size).str() << "\n";
  return 0;
}

int cmd_selftest(const Config& c, std::ostream& out) {
  struct Case {
    ClassId id;
    std::size_t n;
  };
  const Case cases[] = {{ClassId::cactus, 4},      {ClassId::outerplanar, 4}, {ClassId::series_parallel, 4},
                        {ClassId::cayley, 5},      {ClassId::tree_leaves, 4}, {ClassId::dissection, 4},
                        {ClassId::dissection, 5},  {ClassId::cograph, 4},     {ClassId::cograph, 5},
                        {ClassId::permutation, 5}};
  bool ok = true;
  std::uint64_t stream = 0;
  for (const auto& k : cases) {
    ClassConfig cfg;
    cfg.id = k.id;
    const ClassSpec spec(cfg);
    const std::uint64_t seed = RngStream(c.seed).split(stream++)();
    std::string line;
    try {
      const auto r = uniformity_test(spec, k.n, c.samples, seed, c.jobs);
      const bool pass = r.p_value > 1e-3 && r.observed_support == r.support;
      ok = ok && pass;
      std::ostringstream o;
      o << (pass ? "PASS" : "FAIL") << " uniformity " << r.class_name << " n=" << r.n << " support=" << r.support
        << " chi2=" << r.chi_square << " p=" << r.p_value;
      line = o.str();
    } catch (const CorrectnessFailure& e) {
      ok = false;
      line = std::string("FAIL uniformity ") + to_string(k.id) + ": " + e.what();
    }
    out << line << "\n";
  }
  for (const auto& chk : run_invariant_suite(c.seed)) {
    const bool pass = chk.failed == 0;
    ok = ok && pass;
    out << (pass ? "PASS" : "FAIL") << " invariant " << chk.name << " checked=" << chk.checked
        << " failed=" << chk.failed;
    if (!pass) out << " first=" << chk.first_failure;
    out << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_bench(const Config& c, std::ostream& out) {
  // Cographs carry about n^2 / 4 edges, so their grid stops earlier.
  const bool dense = parse_class_id(c.cls) == ClassId::cograph;
  const unsigned min_log = c.min_log ? c.min_log : dense ? 9 : 10;
  const unsigned max_log = c.max_log ? c.max_log : dense ? 13 : 17;
  if (min_log + 4 > max_log || max_log > 30) throw UsageError("need --min-log + 4 <= --max-log <= 30");
  const ClassSpec spec = build_spec(c);
  std::vector<std::size_t> sizes;
  for (unsigned k = min_log; k <= max_log; ++k) sizes.push_back(std::size_t{1} << k);
  const auto r = runtime_scaling(spec, sizes, c.reps, c.seed);
  out << (c.csv ? report_csv_header() + report_csv(r) : report_text(r));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Exact-size uniform samplers for enriched trees and the classes built from them"};
  app.name("enrich");
  app.require_subcommand(1);

  auto env = [](CLI::Option* o, const char* name) { o->envname(std::string("ENRICH_") + name); };
  auto add_class = [&](CLI::App* s) {
    env(s->add_option("--class", c.cls,
                      "cactus | outerplanar | series-parallel | cayley | tree-leaves | dissection | cograph | permutation")
            ->required(),
        "CLASS");
    env(s->add_option("--simples", c.simples, "file of simple permutations, one per line (permutation class)"),
        "SIMPLES");
    env(s->add_option("--zeta", c.zeta, "dissection | cograph | FILE of P(0), P(1), ... (tree-leaves)")
            ->capture_default_str(),
        "ZETA");
    env(s->add_option("--omega", c.omega, "comma-separated outdegrees counted as size (tree-leaves)")
            ->capture_default_str(),
        "OMEGA");
    env(s->add_option("--t0", c.t0, "Boltzmann parameter of the decorations (default: geometric mean of the "
                                     "tilt and the radius, or twice the tilt for entire weights)"),
        "T0");
    env(s->add_option("--tol", c.tol, "residual tolerance of the tilt solver")->capture_default_str(), "TOL");
    env(s->add_option("--precision-digits", c.precision, "working digits of the tilt solver")
            ->capture_default_str()
            ->check(CLI::Range(10, kMaxPrecisionDigits)),
        "PRECISION_DIGITS");
  };
  auto add_seed = [&](CLI::App* s) {
    env(s->add_option("--seed", c.seed, "64-bit seed")->capture_default_str(), "SEED");
  };
  auto add_jobs = [&](CLI::App* s) {
    env(s->add_option("--jobs,-j", c.jobs, "worker threads; output does not depend on it")
            ->capture_default_str()
            ->check(CLI::Range(1u, 1024u)),
        "JOBS");
  };

  auto* sample = app.add_subcommand("sample", "draw uniform samples of a given size");
  add_class(sample);
  env(sample->add_option("--size,-n", c.size, "object size")->required(), "SIZE");
  env(sample->add_option("--count,-m", c.count, "number of samples")->capture_default_str(), "COUNT");
  add_seed(sample);
  env(sample->add_option("--format", c.format, "auto | tree | edges | polygon | perm")->capture_default_str(),
      "FORMAT");
  env(sample->add_option("--out", c.out_path, "write sample i to PATH.i instead of standard output"), "OUT");
  add_jobs(sample);

  auto* count = app.add_subcommand("count", "print the exact number of objects of a size");
  add_class(count);
  env(count->add_option("--size,-n", c.size, "object size")->required(), "SIZE");

  auto* selftest = app.add_subcommand("selftest", "chi-square uniformity against exhaustive oracles, and invariants");
  add_seed(selftest);
  add_jobs(selftest);
  env(selftest->add_option("--samples", c.samples, "samples per uniformity test")->capture_default_str(), "SAMPLES");

  auto* bench = app.add_subcommand("bench", "median sampling time over sizes 2^min-log .. 2^max-log");
  add_class(bench);
  add_seed(bench);
  env(bench->add_option("--min-log", c.min_log, "smallest size exponent (default 10, cographs 9)"), "MIN_LOG");
  env(bench->add_option("--max-log", c.max_log, "largest size exponent (default 17, cographs 13)"), "MAX_LOG");
  env(bench->add_option("--reps", c.reps, "timed samples per size")->capture_default_str(), "REPS");
  bench->add_flag("--csv", c.csv, "comma-separated output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every other parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*sample) return cmd_sample(c, out);
    if (*count) return cmd_count(c, out);
    if (*selftest) return cmd_selftest(c, out);
    if (*bench) return cmd_bench(c, out);
  } catch (const UsageError& e) {
    err << "enrich: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "enrich: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace enrich
