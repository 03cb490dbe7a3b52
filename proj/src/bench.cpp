#include "bigmul/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "bigmul/arena.hpp"
#include "bigmul/basecase.hpp"
#include "bigmul/qmul.hpp"
#include "bigmul/smul.hpp"

namespace bigmul {

namespace {
using W = std::uint64_t;
using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point t0) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
}
}  // namespace

std::uint64_t median_time_ns(unsigned reps, const std::function<void()>& f) {
  reps = std::max(reps, 1u);
  std::vector<std::uint64_t> t(reps);
  for (auto& x : t) {
    auto t0 = Clock::now();
    f();
    x = elapsed_ns(t0);
  }
  std::nth_element(t.begin(), t.begin() + reps / 2, t.end());
  return t[reps / 2];
}

std::vector<std::size_t> default_bench_sizes() {
  std::vector<std::size_t> s;
  for (std::size_t k = 6; k <= 20; ++k) s.push_back(std::size_t{1} << k);
  for (std::size_t x : {3648, 7168, 14336, 28160, 56320, 110592, 221184, 434176, 868352})
    s.push_back(x);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<BenchRecord> run_bench(const BenchOptions& opt,
                                   const std::function<void(const BenchRecord&)>& sink) {
  if (opt.reps < 3) throw std::invalid_argument("run_bench: reps must be at least 3");
  if (!std::is_sorted(opt.sizes.begin(), opt.sizes.end()))
    throw std::invalid_argument("run_bench: sizes must be ascending");
  std::vector<BenchRecord> out;
  for (std::size_t n : opt.sizes) {
    std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ull + n);
    Natural<W> a = random_natural<W>(rng, n), b = random_natural<W>(rng, n);
    a.data()[n - 1] |= W{1} << 63;
    b.data()[n - 1] |= W{1} << 63;
    std::vector<W> ref(2 * n), r(2 * n);
    mul_n(ref.data(), a.data(), n, b.data(), n, opt.reference, opt.thresholds);
    for (Algorithm alg : opt.algorithms) {
      BenchRecord rec;
      rec.algorithm = std::string(algorithm_name(alg));
      rec.input_words = n;
      rec.reps = opt.reps;
      {
        ArenaPeakScope scope;
        mul_n(r.data(), a.data(), n, b.data(), n, alg, opt.thresholds);
        rec.peak_arena_words = scope.peak_bytes() / sizeof(W);
      }
      if (r != ref)
        throw CorrectnessFailure("run_bench: " + rec.algorithm + " disagrees with " +
                                 std::string(algorithm_name(opt.reference)) + " at " +
                                 std::to_string(n) + " words");
      rec.median_ns = median_time_ns(opt.reps, [&] {
        mul_n(r.data(), a.data(), n, b.data(), n, alg, opt.thresholds);
      });
      if (r != ref) throw CorrectnessFailure("run_bench: result changed between runs");
      if (sink) sink(rec);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::string bench_csv_header() { return "algorithm,input_words,reps,median_ns,peak_arena_words"; }

std::string to_csv(const BenchRecord& r) {
  std::ostringstream os;
  os << r.algorithm << ',' << r.input_words << ',' << r.reps << ',' << r.median_ns << ','
     << r.peak_arena_words;
  return os.str();
}

std::vector<BenchRecord> parse_csv(const std::string& text) {
  std::vector<BenchRecord> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == bench_csv_header()) continue;
    std::istringstream ls(line);
    BenchRecord r;
    std::string field;
    std::getline(ls, r.algorithm, ',');
    char c;
    if (!(ls >> r.input_words >> c >> r.reps >> c >> r.median_ns >> c >> r.peak_arena_words))
      throw std::invalid_argument("parse_csv: bad line: " + line);
    out.push_back(r);
  }
  return out;
}

std::string quotient_table(const std::vector<BenchRecord>& records) {
  std::map<std::size_t, std::pair<std::uint64_t, std::uint64_t>> t;  // dmul, smul
  for (const auto& r : records) {
    if (r.algorithm == "dmul") t[r.input_words].first = r.median_ns;
    if (r.algorithm == "smul") t[r.input_words].second = r.median_ns;
  }
  std::ostringstream os;
  os << "input_words,dmul_ns,smul_ns,quotient\n";
  for (const auto& [n, ds] : t) {
    if (!ds.first || !ds.second) continue;
    os << n << ',' << ds.first << ',' << ds.second << ',' << std::fixed << std::setprecision(2)
       << static_cast<double>(ds.first) / static_cast<double>(ds.second) << '\n';
  }
  return os.str();
}

namespace {

// Median per-call time, batching calls until one sample takes ~50us.
double per_call_ns(unsigned reps, const std::function<void()>& f) {
  std::size_t k = 1;
  while (true) {
    auto t0 = Clock::now();
    for (std::size_t i = 0; i < k; ++i) f();
    if (elapsed_ns(t0) > 50000 || k > (1u << 20)) break;
    k *= 2;
  }
  std::uint64_t t = median_time_ns(reps, [&] {
    for (std::size_t i = 0; i < k; ++i) f();
  });
  return static_cast<double>(t) / static_cast<double>(k);
}

// First grid size where challenger beats incumbent on two consecutive points.
std::size_t crossover(const std::vector<std::size_t>& grid, unsigned reps, std::mt19937_64& rng,
                      const std::function<void(W*, const W*, const W*, std::size_t)>& incumbent,
                      const std::function<void(W*, const W*, const W*, std::size_t)>& challenger,
                      std::ostream* log, const char* name) {
  int wins = 0;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    std::size_t n = grid[gi];
    Natural<W> a = random_natural<W>(rng, n), b = random_natural<W>(rng, n);
    std::vector<W> r(2 * n);
    double ti = per_call_ns(reps, [&] { incumbent(r.data(), a.data(), b.data(), n); });
    double tc = per_call_ns(reps, [&] { challenger(r.data(), a.data(), b.data(), n); });
    if (log) *log << name << " n=" << n << " " << ti << " vs " << tc << " ns\n";
    wins = tc < ti ? wins + 1 : 0;
    if (wins == 2) return grid[gi - 1];
  }
  return grid.empty() ? 0 : grid.back() * 2;
}

std::vector<std::size_t> geometric(std::size_t lo, std::size_t hi, double f) {
  std::vector<std::size_t> g;
  for (double x = static_cast<double>(lo); x <= static_cast<double>(hi) + 0.5; x *= f) {
    std::size_t v = static_cast<std::size_t>(std::lround(x));
    if (g.empty() || v != g.back()) g.push_back(v);
  }
  return g;
}

}  // namespace

ThresholdTable calibrate_thresholds(const CalibrateOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  ThresholdTable th;
  th.smul_fft_depth.clear();
  std::ostream* log = opt.log;

  th.kmul = crossover(
      geometric(4, 160, 1.25), opt.reps, rng,
      [](W* r, const W* a, const W* b, std::size_t n) { omul_n(r, a, n, b, n); },
      [](W* r, const W* a, const W* b, std::size_t n) {
        ThresholdTable one;
        one.kmul = n / 2 + 2;  // a single Karatsuba level over omul
        kmul_n(r, a, n, b, n, one);
      },
      log, "kmul");

  ThresholdTable base = th;
  base.t3mul = std::numeric_limits<std::size_t>::max() / 4;
  th.t3mul = std::max(th.kmul, crossover(
      geometric(std::max<std::size_t>(th.kmul, 12), 800, 1.25), opt.reps, rng,
      [&](W* r, const W* a, const W* b, std::size_t n) { kmul_n(r, a, n, b, n, base); },
      [&](W* r, const W* a, const W* b, std::size_t n) {
        ThresholdTable one = base;
        one.t3mul = n / 3 + 2;
        t3mul_n(r, a, n, b, n, one);
      },
      log, "t3mul"));

  ThresholdTable below = th;
  below.qmul = below.smul = below.dmul = std::numeric_limits<std::size_t>::max() / 4;
  const std::size_t top = std::max<std::size_t>(opt.max_words, 64);
  auto big_grid = geometric(std::max<std::size_t>(th.t3mul, 32), top, std::sqrt(2.0));
  th.smul = std::max(th.t3mul, crossover(
      big_grid, opt.reps, rng,
      [&](W* r, const W* a, const W* b, std::size_t n) { t3mul_n(r, a, n, b, n, below); },
      [&](W* r, const W* a, const W* b, std::size_t n) { smul_n(r, a, n, b, n, below); }, log,
      "smul"));
  th.qmul = std::max(th.t3mul, crossover(
      big_grid, opt.reps, rng,
      [&](W* r, const W* a, const W* b, std::size_t n) { t3mul_n(r, a, n, b, n, below); },
      [&](W* r, const W* a, const W* b, std::size_t n) { qmul_n(r, a, n, b, n); }, log, "qmul"));
  if (th.qmul > th.smul) th.qmul = th.smul;  // empty QMUL band
  th.dmul = std::numeric_limits<std::size_t>::max();

  // fastest FFT depth per product-size bucket
  for (unsigned bucket = log2_floor(2 * th.smul); (std::size_t{1} << bucket) <= 2 * top; ++bucket) {
    std::size_t n = std::size_t{1} << (bucket - 1);
    Natural<W> a = random_natural<W>(rng, n), b = random_natural<W>(rng, n);
    std::vector<W> r(2 * n);
    unsigned m0 = smul_select_params<W>(2 * n * 64, true, below).m;
    double best = 0;
    unsigned best_m = m0;
    for (unsigned m = m0 > 2 ? m0 - 2 : 1; m <= m0 + 2; ++m) {
      if (!smul_plan<W>(2 * n * 64, m, true).valid(64)) continue;
      ThresholdTable t = below;
      t.smul_fft_depth[bucket] = m;
      double tm = per_call_ns(opt.reps, [&] { smul_n(r.data(), a.data(), n, b.data(), n, t); });
      if (log) *log << "smul bucket " << bucket << " m=" << m << " " << tm << " ns\n";
      if (best == 0 || tm < best) {
        best = tm;
        best_m = m;
      }
    }
    th.smul_fft_depth[bucket] = best_m;
  }
  return th;
}

}  // namespace bigmul
