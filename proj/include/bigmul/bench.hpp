#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigmul/multiply.hpp"
#include "bigmul/thresholds.hpp"

namespace bigmul {

struct BenchRecord {
  std::string algorithm;
  std::size_t input_words = 0;
  unsigned reps = 0;
  std::uint64_t median_ns = 0;
  std::size_t peak_arena_words = 0;
};

struct CorrectnessFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BenchOptions {
  std::vector<Algorithm> algorithms;
  std::vector<std::size_t> sizes;  // ascending, in words per operand
  unsigned reps = 3;
  std::uint64_t seed = 1;
  Algorithm reference = Algorithm::smul;
  ThresholdTable thresholds = ThresholdTable::defaults();
};

// Powers of 2 and the lengths at which DMUL does best.
std::vector<std::size_t> default_bench_sizes();

// One record per (size, algorithm); every product is checked against the
// reference algorithm first and a mismatch throws CorrectnessFailure.
std::vector<BenchRecord> run_bench(const BenchOptions& opt,
                                   const std::function<void(const BenchRecord&)>& sink = {});

std::string bench_csv_header();
std::string to_csv(const BenchRecord& r);
std::vector<BenchRecord> parse_csv(const std::string& text);

// input_words,dmul_ns,smul_ns,quotient for sizes having both.
std::string quotient_table(const std::vector<BenchRecord>& records);

struct CalibrateOptions {
  std::size_t max_words = 1 << 14;
  unsigned reps = 3;
  std::uint64_t seed = 1;
  std::ostream* log = nullptr;
};

ThresholdTable calibrate_thresholds(const CalibrateOptions& opt = {});

// Median of reps runs of f, in nanoseconds.
std::uint64_t median_time_ns(unsigned reps, const std::function<void()>& f);

}  // namespace bigmul
