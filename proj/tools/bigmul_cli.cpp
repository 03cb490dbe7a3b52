// bigmul: benchmark, calibrate and self-check the multiplication ladder.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bigmul/bench.hpp"
#include "bigmul/dkss.hpp"
#include "bigmul/lucas_lehmer.hpp"
#include "bigmul/multiply.hpp"
#include "bigmul/numtheory.hpp"
#include "bigmul/smul.hpp"

using namespace bigmul;

namespace {

std::vector<Algorithm> parse_algos(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const auto& n : names) {
    auto a = parse_algorithm(n);
    if (!a || *a == Algorithm::automatic) throw CLI::ValidationError("--algos", "unknown algorithm " + n);
    out.push_back(*a);
  }
  return out;
}

ThresholdTable load_thresholds(const std::string& path) {
  return path.empty() ? ThresholdTable::defaults() : ThresholdTable::load(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bigmul multiplication benchmarks and checks"};
  app.require_subcommand(1);

  std::vector<std::string> algos{"omul", "kmul", "t3mul", "qmul", "smul", "dmul"};
  std::vector<std::size_t> sizes;
  unsigned reps = 3;
  std::uint64_t seed = 1;
  std::string out_path, th_path, reference = "smul";

  auto* bench = app.add_subcommand("bench", "time multiplications and write CSV");
  bench->add_option("--algos", algos, "algorithms")->delimiter(',');
  bench->add_option("--sizes", sizes, "operand lengths in words (default grid if empty)")->delimiter(',');
  bench->add_option("--reps", reps, "repetitions per point (>= 3)");
  bench->add_option("--seed", seed, "operand seed");
  bench->add_option("--out", out_path, "CSV output file (default stdout)");
  bench->add_option("--thresholds", th_path, "threshold file");
  bench->add_option("--reference", reference, "algorithm used as the correctness oracle");

  std::size_t max_words = 1 << 14;
  auto* calib = app.add_subcommand("calibrate", "measure crossover points");
  calib->add_option("--max-words", max_words, "largest operand tried");
  calib->add_option("--reps", reps, "repetitions per point");
  calib->add_option("--seed", seed, "operand seed");
  calib->add_option("--out", out_path, "threshold file to write (default stdout)");

  std::vector<unsigned> exponents{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 61, 89, 107, 127};
  auto* ll = app.add_subcommand("ll", "Lucas-Lehmer test with each multiplier");
  ll->add_option("--exponents", exponents, "odd prime exponents")->delimiter(',');
  ll->add_option("--algos", algos, "algorithms")->delimiter(',');
  ll->add_option("--thresholds", th_path, "threshold file");

  auto* verify = app.add_subcommand("verify", "cross-check all multipliers on random operands");
  verify->add_option("--algos", algos, "algorithms")->delimiter(',');
  verify->add_option("--sizes", sizes, "operand lengths in words")->delimiter(',');
  verify->add_option("--seed", seed, "operand seed");
  verify->add_option("--thresholds", th_path, "threshold file");

  unsigned max_bits = 1704;
  auto* proth = app.add_subcommand("proth-table", "regenerate the Proth prime table");
  proth->add_option("--max-bits", max_bits, "largest bit length");
  proth->add_option("--out", out_path, "output file (default stdout)");

  std::size_t plan_words = 3648;
  auto* plan = app.add_subcommand("plan", "print the SMUL and DMUL parameters for an input length");
  plan->add_option("words", plan_words, "operand length in words")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw std::runtime_error("cannot open " + out_path);
      out = &file;
    }

    if (bench->parsed()) {
      BenchOptions opt;
      opt.algorithms = parse_algos(algos);
      opt.sizes = sizes.empty() ? default_bench_sizes() : sizes;
      opt.reps = reps;
      opt.seed = seed;
      opt.reference = parse_algos({reference}).front();
      opt.thresholds = load_thresholds(th_path);
      *out << bench_csv_header() << '\n';
      auto recs = run_bench(opt, [&](const BenchRecord& r) { *out << to_csv(r) << '\n' << std::flush; });
      bool has_d = false, has_s = false;
      for (Algorithm a : opt.algorithms) {
        has_d |= a == Algorithm::dmul;
        has_s |= a == Algorithm::smul;
      }
      if (has_d && has_s) std::cout << quotient_table(recs);
      return 0;
    }

    if (calib->parsed()) {
      CalibrateOptions opt;
      opt.max_words = max_words;
      opt.reps = reps;
      opt.seed = seed;
      opt.log = &std::cerr;
      ThresholdTable th = calibrate_thresholds(opt);
      *out << th.serialize();
      return 0;
    }

    if (ll->parsed()) {
      ThresholdTable th = load_thresholds(th_path);
      auto list = parse_algos(algos);
      bool agree = true;
      for (unsigned p : exponents) {
        std::optional<LucasLehmerResult> first;
        for (Algorithm a : list) {
          LucasLehmerResult r = lucas_lehmer(p, a, th);
          std::cout << "p=" << p << ' ' << algorithm_name(a) << ' '
                    << (r.is_prime ? "prime" : "composite") << " residue64=0x" << std::hex
                    << r.residue64 << std::dec << '\n';
          if (!first)
            first = r;
          else if (first->is_prime != r.is_prime || first->residue64 != r.residue64)
            agree = false;
        }
      }
      if (!agree) std::cerr << "backends disagree\n";
      return agree ? 0 : 1;
    }

    if (verify->parsed()) {
      ThresholdTable th = load_thresholds(th_path);
      auto list = parse_algos(algos);
      if (sizes.empty()) sizes = {1, 2, 3, 10, 50, 100, 500, 1000, 3648};
      std::mt19937_64 rng(seed);
      int bad = 0;
      for (std::size_t n : sizes) {
        Natural<std::uint64_t> a = random_natural<std::uint64_t>(rng, n);
        Natural<std::uint64_t> b = random_natural<std::uint64_t>(rng, n);
        Natural<std::uint64_t> ref = multiply(a, b, list.front(), th);
        for (Algorithm alg : list) {
          bool ok = multiply(a, b, alg, th) == ref;
          std::cout << n << ' ' << algorithm_name(alg) << (ok ? " ok" : " MISMATCH") << '\n';
          bad += !ok;
        }
      }
      return bad ? 1 : 0;
    }

    if (proth->parsed()) {
      *out << "# Proth primes for DKSS, one per bit length that is a multiple of 8.\n"
              "# Columns: bits h g. The prime is p = h * 2^(bits - bitlen(h)) + 1, which has\n"
              "# exactly 'bits' bits; h is the smallest odd value giving a prime and g is the\n"
              "# smallest prime generating (Z/pZ)^*. Regenerate with: bigmul proth-table\n";
      for (unsigned bits = 8; bits <= max_bits; bits += 8) {
        ProthPrime p = proth_prime_for_bits(bits);
        *out << bits << ' ' << p.h << ' ' << p.g << '\n' << std::flush;
      }
      return 0;
    }

    if (plan->parsed()) {
      std::size_t bits = plan_words * 64;
      SmulPlan sp = smul_select_params<std::uint64_t>(2 * bits, true);
      std::cout << "smul: N=" << sp.N << " m=" << sp.m << " s=" << sp.s << " K=" << sp.K
                << " omega=2^" << sp.omega_exp << '\n';
      std::cout << "dmul: " << dkss_select_params<std::uint64_t>(bits).trace << '\n';
      return 0;
    }
  } catch (const CorrectnessFailure& e) {
    std::cerr << "correctness failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
