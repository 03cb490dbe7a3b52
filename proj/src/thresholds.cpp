#include "bigmul/thresholds.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bigmul {

bool ThresholdTable::valid() const {
  if (kmul < 1 || t3mul < 1 || qmul < 1 || smul < 1 || dmul < 1 || smul_recursion < 1)
    return false;
  return kmul <= t3mul && t3mul <= qmul && qmul <= smul && smul <= dmul;
}

const ThresholdTable& ThresholdTable::defaults() {
  static const ThresholdTable table;
  return table;
}

std::string ThresholdTable::serialize() const {
  std::ostringstream os;
  os << "# bigmul calibration, word counts of the shorter operand\n";
  os << "kmul=" << kmul << "\n";
  os << "t3mul=" << t3mul << "\n";
  os << "qmul=" << qmul << "\n";
  os << "smul=" << smul << "\n";
  os << "dmul=" << dmul << "\n";
  os << "smul_recursion=" << smul_recursion << "\n";
  for (auto [bucket, depth] : smul_fft_depth)
    os << "smul_fft_depth." << bucket << "=" << depth << "\n";
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::size_t parse_count(std::string_view v, std::string_view key) {
  std::size_t pos = 0;
  std::string s(v);
  unsigned long long x;
  try {
    x = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + std::string(key));
  }
  if (pos != s.size()) throw std::invalid_argument("bad value for " + std::string(key));
  return static_cast<std::size_t>(x);
}

}  // namespace

ThresholdTable ThresholdTable::parse(std::string_view text) {
  ThresholdTable t;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("missing '=' in calibration line");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view val = trim(line.substr(eq + 1));
    if (key == "kmul")
      t.kmul = parse_count(val, key);
    else if (key == "t3mul")
      t.t3mul = parse_count(val, key);
    else if (key == "qmul")
      t.qmul = parse_count(val, key);
    else if (key == "smul")
      t.smul = parse_count(val, key);
    else if (key == "dmul")
      t.dmul = parse_count(val, key);
    else if (key == "smul_recursion")
      t.smul_recursion = parse_count(val, key);
    else if (key.starts_with("smul_fft_depth."))
      t.smul_fft_depth[static_cast<unsigned>(parse_count(key.substr(15), key))] =
          static_cast<unsigned>(parse_count(val, key));
    else
      throw std::invalid_argument("unknown calibration key " + std::string(key));
  }
  if (!t.valid()) throw std::invalid_argument("calibration thresholds are not monotone");
  return t;
}

void ThresholdTable::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << serialize();
}

ThresholdTable ThresholdTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

}  // namespace bigmul
