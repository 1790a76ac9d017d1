// hpq: generate instances, verify structures against brute force, and
// benchmark pointer changes, query costs and storage.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "hpq/dual_tree.hpp"
#include "hpq/errors.hpp"
#include "hpq/flarb.hpp"
#include "hpq/interval.hpp"
#include "hpq/okey_dokey.hpp"
#include "hpq/prefix.hpp"
#include "hpq/scaling.hpp"
#include "hpq/testkit.hpp"

using namespace hpq;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct LoadedInstance {
  Mode mode = Mode::Farthest;
  std::vector<Point> points;
};

Mode parse_mode(const std::string& s) {
  if (s == "farthest") return Mode::Farthest;
  if (s == "nearest") return Mode::Nearest;
  throw InvalidInput("mode must be \"farthest\" or \"nearest\", got \"" + s + "\"");
}

LoadedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(path + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object()) throw InvalidInput(path + ": top level must be an object");
  LoadedInstance inst;
  if (!doc.contains("mode") || !doc["mode"].is_string()) throw InvalidInput(path + ": missing string field \"mode\"");
  inst.mode = parse_mode(doc["mode"].get<std::string>());
  if (!doc.contains("points") || !doc["points"].is_array()) throw InvalidInput(path + ": missing array field \"points\"");
  const json& pts = doc["points"];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const json& p = pts[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw InvalidInput(path + ": points[" + std::to_string(i) + "] is not a pair of integers");
    }
    inst.points.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
  }
  if (inst.points.empty()) throw InvalidInput(path + ": no points");
  ConvexSequence::from_points(inst.points);  // names the violated invariant
  return inst;
}

void write_instance(std::ostream& os, Mode mode, std::span<const Point> pts) {
  json doc;
  doc["mode"] = to_string(mode);
  json arr = json::array();
  for (const Point& p : pts) arr.push_back({p.x, p.y});
  doc["points"] = std::move(arr);
  os << doc.dump() << "\n";
}

// Worker count: --threads (0 = hardware), capped by HPQ_THREADS.
unsigned worker_count(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HPQ_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& body) {
  if (workers <= 1 || count < 2 * workers) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Shape parse_shape(const std::string& s) { return shape_from_string(s == "parabola" ? "parabola-arc" : s); }

int resolve_k(int k, double eps) { return k > 0 ? k : okey_dokey_k(eps); }

std::string outcome_str(const QueryOutcome& o) { return to_string(o); }

// ---------------------------------------------------------------------------

struct GenOpts {
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string shape = "circle";
  std::string mode = "farthest";
  std::string out = "-";
};

int run_gen(const GenOpts& o) {
  const Mode mode = parse_mode(o.mode);
  const Instance inst = gen_convex(o.n, o.seed, parse_shape(o.shape), mode);
  if (o.out == "-") {
    write_instance(std::cout, mode, inst.sites.points());
  } else {
    std::ofstream f(o.out);
    if (!f) throw InvalidInput("cannot write " + o.out);
    write_instance(f, mode, inst.sites.points());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyOpts {
  std::string in;
  std::string structure = "interval";
  std::string mode;  // empty: take the file's mode
  std::size_t queries = 10000;
  std::uint64_t seed = 1;
  double eps = 1.0;
  int k = 0;
  std::size_t memory_mb = OkeyDokey::kDefaultMemoryLimit >> 20;
  unsigned threads = 0;
};

int run_verify(const VerifyOpts& o) {
  LoadedInstance inst = load_instance(o.in);
  const Mode mode = o.mode.empty() ? inst.mode : parse_mode(o.mode);
  const std::span<const Point> pts(inst.points);
  const std::size_t n = pts.size();

  const auto t0 = std::chrono::steady_clock::now();
  std::function<std::string(std::size_t)> check;  // "" when query i matches
  std::unique_ptr<IntervalStructure> interval;
  std::unique_ptr<OkeyDokey> okey;
  std::unique_ptr<PrefixStructure> prefix;
  const auto hq = gen_queries(pts, o.queries, o.seed);
  std::string label = o.structure;

  if (o.structure == "interval") {
    interval = std::make_unique<IntervalStructure>(pts, mode);
    check = [&](std::size_t i) -> std::string {
      const QueryOutcome got = interval->query(hq[i].q, hq[i].l);
      const QueryOutcome want = bf_query(pts, hq[i].q, hq[i].l, mode);
      if (got == want) return {};
      return "q=" + to_string(hq[i].q) + " got " + outcome_str(got) + " want " + outcome_str(want);
    };
  } else if (o.structure == "okey-dokey") {
    const int k = resolve_k(o.k, o.eps);
    label += " k=" + std::to_string(k);
    okey = std::make_unique<OkeyDokey>(pts, mode, k, std::uint64_t{o.memory_mb} << 20);
    const int budget = 1 << (k + 1);
    check = [&, budget](std::size_t i) -> std::string {
      LocateBudget b;
      const QueryOutcome got = okey->query(hq[i].q, hq[i].l, &b);
      const QueryOutcome want = bf_query(pts, hq[i].q, hq[i].l, mode);
      if (got != want) return "q=" + to_string(hq[i].q) + " got " + outcome_str(got) + " want " + outcome_str(want);
      if (b.locates > budget) return "locate budget " + std::to_string(b.locates) + " exceeds " + std::to_string(budget);
      return {};
    };
  } else if (o.structure == "prefix") {
    prefix = std::make_unique<PrefixStructure>(mode);
    for (const Point& p : pts) prefix->push(p);
    check = [&](std::size_t i) -> std::string {
      const std::size_t t = 1 + std::mt19937_64(o.seed + i)() % n;
      const SiteId got = prefix->query_prefix(t, hq[i].q);
      const SiteId want = bf_extreme(pts.first(t), hq[i].q, mode);
      if (got == want) return {};
      return "t=" + std::to_string(t) + " q=" + to_string(hq[i].q) + " got " + std::to_string(got) + " want " +
             std::to_string(want);
    };
  } else {
    throw InvalidInput("unknown structure \"" + o.structure + "\" (okey-dokey, interval, prefix)");
  }
  const double build = seconds_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  std::atomic<std::size_t> bad{0};
  std::mutex mu;
  std::vector<std::string> samples;
  const std::uint64_t writes_before = prefix ? prefix->store().write_count() : 0;
  parallel_for(hq.size(), worker_count(o.threads), [&](std::size_t i) {
    std::string msg = check(i);
    if (msg.empty()) return;
    ++bad;
    std::lock_guard lock(mu);
    if (samples.size() < 5) samples.push_back("query " + std::to_string(i) + ": " + msg);
  });
  if (prefix && prefix->store().write_count() != writes_before) {
    ++bad;
    samples.push_back("queries wrote to the persistence store");
  }
  const double elapsed = seconds_since(t1);

  std::cout << "verify " << label << " n=" << n << " mode=" << to_string(mode) << " queries=" << hq.size()
            << " mismatches=" << bad.load() << std::fixed << std::setprecision(3) << " build_s=" << build
            << " check_s=" << elapsed << "\n";
  for (const auto& s : samples) std::cerr << "mismatch: " << s << "\n";
  return bad.load() == 0 ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------

struct FlarbOpts {
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string shape = "circle";
  std::string mode = "farthest";
  std::string out = "-";
  bool no_grappa = false;
};

const char* kFlarbColumns =
    "CSV columns: step,sites,delta,cumulative,potential,potential_change,amortized_ratio,grappa_writes\n"
    "  delta            pointer changes of the flarb at this step\n"
    "  potential        Phi of the dual tree after the step\n"
    "  amortized_ratio  (delta + potential_change) / log2(2 * nodes + 1)\n"
    "  grappa_writes    persistence writes of the mirrored grappa update (-1 with --no-grappa)";

int run_bench_flarb(const FlarbOpts& o) {
  const Mode mode = parse_mode(o.mode);
  const Instance inst = gen_convex(o.n, o.seed, parse_shape(o.shape), mode);
  std::ofstream file;
  if (o.out != "-") {
    file.open(o.out);
    if (!file) throw InvalidInput("cannot write " + o.out);
  }
  std::ostream& csv = o.out == "-" ? std::cout : file;
  std::ostream& log = o.out == "-" ? std::cerr : std::cout;
  csv << "step,sites,delta,cumulative,potential,potential_change,amortized_ratio,grappa_writes\n";

  std::unique_ptr<PrefixStructure> prefix;
  std::unique_ptr<DualTree> dual;
  if (o.no_grappa) {
    dual = std::make_unique<DualTree>(mode);
  } else {
    prefix = std::make_unique<PrefixStructure>(mode);
  }
  std::uint64_t cumulative = 0;
  long double phi = 0;
  double worst = 0;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t step = 0;
  for (const Point& p : inst.sites.points()) {
    ++step;
    std::size_t delta;
    long double dphi;
    long long writes = -1;
    std::size_t nodes;
    if (prefix) {
      prefix->push(p);
      const auto& st = prefix->push_stats().back();
      delta = st.delta_count;
      dphi = st.potential_change;
      writes = static_cast<long long>(st.writes);
      nodes = prefix->dual().topology().node_count();
    } else {
      const auto r = dual->insert_ccw(p);
      delta = r.delta.count();
      dphi = r.potential_change;
      nodes = dual->topology().node_count();
    }
    cumulative += delta;
    phi += dphi;
    const double ratio = nodes == 0 ? 0.0
                                    : static_cast<double>(static_cast<long double>(delta) + dphi) /
                                          std::log2(2.0 * static_cast<double>(nodes) + 1);
    worst = std::max(worst, ratio);
    csv << step << ',' << step << ',' << delta << ',' << cumulative << ',' << std::setprecision(10)
        << static_cast<double>(phi) << ',' << static_cast<double>(dphi) << ',' << ratio << ',' << writes << '\n';
  }
  const double n = static_cast<double>(o.n);
  const double fitted = o.n > 1 ? static_cast<double>(cumulative) / (n * std::log2(n)) : 0.0;
  const bool ok = worst <= kFlarbC && fitted <= kFlarbC;
  log << std::setprecision(4) << "bench-flarb n=" << o.n << " mode=" << to_string(mode) << " total_delta=" << cumulative
      << " fitted_c=" << fitted << " max_step_ratio=" << worst << " C=" << kFlarbC
      << " bound=" << (ok ? "ok" : "violated") << " seconds=" << seconds_since(t0) << "\n";
  return ok ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------

struct QueryOpts {
  std::string in;
  std::size_t n = 1024;
  std::uint64_t seed = 1;
  std::string shape = "circle";
  std::string mode = "farthest";
  std::string structure = "all";
  std::size_t queries = 10000;
  double eps = 1.0;
  int k = 0;
  std::size_t memory_mb = OkeyDokey::kDefaultMemoryLimit >> 20;
  std::string out;
};

int run_bench_query(const QueryOpts& o) {
  LoadedInstance inst;
  if (!o.in.empty()) {
    inst = load_instance(o.in);
  } else {
    inst.mode = parse_mode(o.mode);
    const Instance g = gen_convex(o.n, o.seed, parse_shape(o.shape), inst.mode);
    inst.points.assign(g.sites.points().begin(), g.sites.points().end());
  }
  const std::span<const Point> pts(inst.points);
  const Mode mode = inst.mode;
  const auto hq = gen_queries(pts, o.queries, o.seed);
  std::ofstream csv;
  if (!o.out.empty()) {
    csv.open(o.out);
    if (!csv) throw InvalidInput("cannot write " + o.out);
    csv << "structure,query,locates,ns\n";
  }

  json report;
  report["n"] = pts.size();
  report["mode"] = to_string(mode);
  report["queries"] = hq.size();
  report["structures"] = json::array();
  bool mismatch = false;

  // Times only the structure query; the brute-force check runs afterwards.
  struct Sample {
    bool ok;
    int cost;
    double ns;
  };
  auto timed = [](auto&& query, auto&& expected, int& cost) {
    const auto t = std::chrono::steady_clock::now();
    const auto got = query();
    const double ns = seconds_since(t) * 1e9;
    return Sample{got == expected(), cost, ns};
  };
  auto measure = [&](const std::string& name, double build_s, auto&& one) {
    std::vector<double> ns(hq.size());
    std::vector<int> cost(hq.size());
    for (std::size_t i = 0; i < hq.size(); ++i) {
      const Sample r = one(i);
      ns[i] = r.ns;
      const bool ok = r.ok;
      const int c = r.cost;
      cost[i] = c;
      mismatch |= !ok;
      if (csv) csv << name << ',' << i << ',' << c << ',' << static_cast<long long>(ns[i]) << '\n';
    }
    std::vector<double> sorted = ns;
    std::sort(sorted.begin(), sorted.end());
    double total = 0, total_cost = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      total += ns[i];
      total_cost += cost[i];
    }
    const double count = static_cast<double>(std::max<std::size_t>(1, ns.size()));
    json j;
    j["structure"] = name;
    j["build_seconds"] = build_s;
    j["mean_ns"] = total / count;
    j["p50_ns"] = sorted.empty() ? 0 : sorted[sorted.size() / 2];
    j["p99_ns"] = sorted.empty() ? 0 : sorted[sorted.size() * 99 / 100];
    j["mean_cost"] = total_cost / count;
    j["max_cost"] = cost.empty() ? 0 : *std::max_element(cost.begin(), cost.end());
    return j;
  };
  const bool all = o.structure == "all";
  if (!all && o.structure != "okey-dokey" && o.structure != "interval" && o.structure != "prefix") {
    throw InvalidInput("unknown structure \"" + o.structure + "\" (all, okey-dokey, interval, prefix)");
  }
  if (all || o.structure == "interval") {
    const auto t0 = std::chrono::steady_clock::now();
    const IntervalStructure s(pts, mode);
    const double b = seconds_since(t0);
    json j = measure("interval", b, [&](std::size_t i) {
      IntervalStructure::QueryStats st;
      return timed([&] { return s.query(hq[i].q, hq[i].l, &st); },
                       [&] { return bf_query(pts, hq[i].q, hq[i].l, mode); }, st.sub_queries);
    });
    j["cost"] = "prefix/suffix sub-queries";
    j["stored_entries"] = s.stored_entries();
    report["structures"].push_back(j);
  }
  if (all || o.structure == "okey-dokey") {
    const int k = resolve_k(o.k, o.eps);
    const auto t0 = std::chrono::steady_clock::now();
    const OkeyDokey s(pts, mode, k, std::uint64_t{o.memory_mb} << 20);
    const double b = seconds_since(t0);
    json j = measure("okey-dokey", b, [&](std::size_t i) {
      LocateBudget lb;
      return timed([&] { return s.query(hq[i].q, hq[i].l, &lb); },
                       [&] { return bf_query(pts, hq[i].q, hq[i].l, mode); }, lb.locates);
    });
    j["k"] = k;
    j["cost"] = "elementary locates";
    j["budget"] = 1 << (k + 1);
    j["stored_cells"] = s.stored().cells;
    report["structures"].push_back(j);
  }
  if (all || o.structure == "prefix") {
    const auto t0 = std::chrono::steady_clock::now();
    PrefixStructure s(mode);
    for (const Point& p : pts) s.push(p);
    const double b = seconds_since(t0);
    std::mt19937_64 rng(o.seed);
    std::vector<std::size_t> ts(hq.size());
    for (auto& t : ts) t = 1 + rng() % pts.size();
    json j = measure("prefix", b, [&](std::size_t i) {
      int probes = 0;
      return timed([&] { return s.query_prefix(ts[i], hq[i].q, &probes); },
                       [&] { return bf_extreme(pts.first(ts[i]), hq[i].q, mode); }, probes);
    });
    j["cost"] = "oracle probes";
    j["stored_entries"] = s.stored_entries();
    report["structures"].push_back(j);
  }
  report["all_match"] = !mismatch;
  std::cout << report.dump(2) << "\n";
  return mismatch ? kExitMismatch : kExitOk;
}

// ---------------------------------------------------------------------------

struct SpaceOpts {
  std::vector<std::size_t> ns{64, 128, 256, 512, 1024, 2048, 4096};
  std::vector<int> ks{1, 2, 3};
  std::uint64_t seed = 1;
  std::size_t build_mb = 64;
  bool with_interval = true;
  bool as_json = false;
};

int run_space(const SpaceOpts& o) {
  json report;
  report["ns"] = o.ns;
  report["fit_tolerance"] = 4.0;
  bool build_mismatch = false;
  auto emit = [&](const std::string& name, const std::string& model, const std::vector<SpaceRow>& rows,
                  json extra = json::object()) {
    const SpaceFit fit = fit_constant(rows);
    json j = std::move(extra);
    j["structure"] = name;
    j["model"] = model;
    j["constant"] = fit.constant;
    j["spread"] = fit.spread;
    j["within_tolerance"] = fit.spread <= 4.0;
    j["rows"] = json::array();
    for (const SpaceRow& r : rows) j["rows"].push_back({{"n", r.n}, {"count", r.count}, {"ratio", r.count / r.model}});
    report["fits"].push_back(j);
    if (!o.as_json) {
      std::cout << name << "  count ~ c * " << model << "\n";
      std::cout << "  " << std::setw(6) << "n" << std::setw(16) << "count" << std::setw(14) << "count/model" << "\n";
      for (const SpaceRow& r : rows) {
        std::cout << "  " << std::setw(6) << r.n << std::setw(16) << r.count << std::setw(14) << std::setprecision(4)
                  << r.count / r.model << "\n";
      }
      std::cout << "  best-fit c = " << std::setprecision(4) << fit.constant << ", worst factor " << fit.spread
                << (fit.spread <= 4.0 ? " (within 4x)" : " (outside 4x)") << "\n\n";
    }
  };

  for (int k : o.ks) {
    const std::string model = k == 1 ? "n^3" : "n^(" + std::to_string(2 * k + 1) + "/" + std::to_string(2 * k - 1) + ")";
    auto rows = okey_dokey_space(o.ns, k);
    json builds = json::array();
    for (const SpaceRow& r : rows) {
      const OkeyDokeyPlan plan = plan_okey_dokey(r.n, k);
      if (plan.bytes > (std::uint64_t{o.build_mb} << 20)) {
        builds.push_back({{"n", r.n}, {"built", false}});
        continue;
      }
      const Instance inst = gen_convex(r.n, o.seed, Shape::circle);
      const OkeyDokey s(inst.sites.points(), Mode::Farthest, k);
      const bool same = s.stored().cells == plan.cells && s.stored().nodes == plan.nodes;
      build_mismatch |= !same;
      builds.push_back({{"n", r.n}, {"built", true}, {"matches_plan", same}});
    }
    emit("okey-dokey k=" + std::to_string(k) + " (Voronoi cells, exact plan)", model, rows, {{"k", k}, {"builds", builds}});
  }
  emit("prefix persistence history", "n log2(n)^2", persistence_space(o.ns, o.seed));
  if (o.with_interval) emit("interval persistence entries", "n log2(n)^3", interval_space(o.ns, o.seed));
  if (o.as_json) std::cout << report.dump(2) << "\n";
  if (build_mismatch) std::cerr << "space: a built okey-dokey structure disagrees with its plan\n";
  return build_mismatch ? kExitMismatch : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Halfplane proximity queries over points in convex position"};
  app.require_subcommand(1);

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "Write a generated convex instance as JSON");
  g->add_option("--n", gen.n, "Number of sites")->required();
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--shape", gen.shape, "circle, ellipse or parabola")->check(CLI::IsMember({"circle", "ellipse", "parabola", "parabola-arc"}));
  g->add_option("--mode", gen.mode, "farthest or nearest")->check(CLI::IsMember({"farthest", "nearest"}));
  g->add_option("--out", gen.out, "Output file, - for stdout");

  VerifyOpts ver;
  auto* v = app.add_subcommand("verify", "Cross-check a structure against brute force; exit 0 iff all queries match");
  v->add_option("--in", ver.in, "Instance file")->required();
  v->add_option("--structure", ver.structure, "okey-dokey, interval or prefix");
  v->add_option("--mode", ver.mode, "Override the file's mode");
  v->add_option("--queries", ver.queries, "Number of random queries");
  v->add_option("--seed", ver.seed, "Query seed");
  v->add_option("--eps", ver.eps, "Okey-Dokey trade-off; k = ceil(1/2 + 1/eps)");
  v->add_option("--k", ver.k, "Okey-Dokey depth (overrides --eps)");
  v->add_option("--memory-limit-mb", ver.memory_mb, "Okey-Dokey locator budget");
  v->add_option("--threads", ver.threads, "Worker threads (0 = all cores; HPQ_THREADS caps)");

  FlarbOpts fl;
  auto* f = app.add_subcommand("bench-flarb", "Replay n insertions and report per-step pointer changes");
  f->add_option("--n", fl.n, "Number of sites")->required();
  f->add_option("--seed", fl.seed, "Generator seed");
  f->add_option("--shape", fl.shape, "circle, ellipse or parabola");
  f->add_option("--mode", fl.mode, "farthest or nearest");
  f->add_option("--out", fl.out, "CSV file, - for stdout");
  f->add_flag("--no-grappa", fl.no_grappa, "Skip the persistent grappa mirror");
  f->footer(kFlarbColumns);

  QueryOpts qo;
  auto* q = app.add_subcommand("bench-query", "Build structures and report query costs as JSON");
  q->add_option("--in", qo.in, "Instance file (otherwise generated)");
  q->add_option("--n", qo.n, "Generated instance size");
  q->add_option("--seed", qo.seed, "Generator and query seed");
  q->add_option("--shape", qo.shape, "circle, ellipse or parabola");
  q->add_option("--mode", qo.mode, "farthest or nearest");
  q->add_option("--structure", qo.structure, "all, okey-dokey, interval or prefix");
  q->add_option("--queries", qo.queries, "Number of random queries");
  q->add_option("--eps", qo.eps, "Okey-Dokey trade-off");
  q->add_option("--k", qo.k, "Okey-Dokey depth (overrides --eps)");
  q->add_option("--memory-limit-mb", qo.memory_mb, "Okey-Dokey locator budget");
  q->add_option("--out", qo.out, "Per-query CSV: structure,query,locates,ns");

  SpaceOpts so;
  auto* s = app.add_subcommand("space", "Report storage against the asymptotic space bounds");
  s->add_option("--ns", so.ns, "Instance sizes")->delimiter(',');
  s->add_option("--k", so.ks, "Okey-Dokey depths")->delimiter(',');
  s->add_option("--seed", so.seed, "Generator seed");
  s->add_option("--build-limit-mb", so.build_mb, "Build Okey-Dokey to cross-check the plan when it fits");
  s->add_flag("!--no-interval", so.with_interval, "Skip the interval structure rows");
  s->add_flag("--json", so.as_json, "Emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*v) return run_verify(ver);
    if (*f) return run_bench_flarb(fl);
    if (*q) return run_bench_query(qo);
    if (*s) return run_space(so);
  } catch (const InvalidInput& e) {
    std::cerr << "hpq: invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "hpq: resource limit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "hpq: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
