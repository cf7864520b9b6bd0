#pragma once

// Eigenvalue sequence producers: prime sieve, Ramanujan tau data computed from
// scratch, synthetic Sato-Tate and dihedral samplers, CSV I/O, and the
// Kim-Sarnak bound validator.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <stdexcept>
#include <string>
#include <vector>

#include "hecke/rng.hpp"

namespace hecke::sources {

using BigInt = boost::multiprecision::int256_t;

struct PrimeTable {
  long long limit = 0;
  std::vector<long long> primes;
};

inline PrimeTable sieve_primes(long long limit) {
  if (limit < 2 || limit > 100'000'000)
    throw std::invalid_argument("sieve_primes: limit must be in [2, 1e8]");
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  PrimeTable table;
  table.limit = limit;
  for (long long i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    table.primes.push_back(i);
    for (long long j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return table;
}

// Smallest prefix of the primes of length at least n.
inline PrimeTable first_n_primes(std::size_t n) {
  if (n == 0) throw std::invalid_argument("first_n_primes: n must be positive");
  double bound = 30.0;
  if (n >= 6) {
    const double ln = std::log(static_cast<double>(n));
    bound = n * (ln + std::log(ln)) * 1.1;
  }
  PrimeTable table = sieve_primes(std::max<long long>(30, static_cast<long long>(bound)));
  if (table.primes.size() < n)
    throw std::logic_error("first_n_primes: sieve bound too small");
  table.primes.resize(n);
  return table;
}

enum class Source { Tau, SatoTate, Dihedral, Csv };

inline std::string source_name(Source s) {
  switch (s) {
    case Source::Tau: return "tau";
    case Source::SatoTate: return "sato_tate";
    case Source::Dihedral: return "dihedral";
    case Source::Csv: return "csv";
  }
  return "?";
}

struct EigenvalueSequence {
  struct Entry {
    long long p;
    double a;
  };

  std::vector<Entry> entries;           // strictly increasing in p
  std::vector<long long> excluded;      // the finite ramified set T
  Source source = Source::Csv;
  std::string normalization = "unitary";
};

// tau(1..limit) via the log-derivative recurrence of Delta = q prod (1-q^n)^24:
// (n-1) tau(n) = -24 sum_{m=1}^{n-1} sigma_1(m) tau(n-m).
// Partial sums overflow 128 bits long before the final values do, hence the
// 256-bit accumulator.
inline std::vector<BigInt> tau_table(int limit) {
  if (limit < 1 || limit > 100'000)
    throw std::invalid_argument("tau_table: limit must be in [1, 1e5]");
  std::vector<long long> sigma1(limit + 1, 0);
  for (int d = 1; d <= limit; ++d)
    for (int m = d; m <= limit; m += d) sigma1[m] += d;
  std::vector<BigInt> tau(limit + 1);
  tau[1] = 1;
  for (int n = 2; n <= limit; ++n) {
    BigInt acc = 0;
    for (int m = 1; m < n; ++m) acc += BigInt(sigma1[m]) * tau[n - m];
    acc *= -24;
    if (acc % (n - 1) != 0)
      throw std::runtime_error("tau_table: recurrence divisibility failed");
    tau[n] = acc / (n - 1);
  }
  return tau;
}

// a_p = tau(p) / p^{11/2} for all primes p <= limit. Level 1, so T is empty.
inline EigenvalueSequence tau_sequence(int limit) {
  if (limit < 2 || limit > 100'000)
    throw std::invalid_argument("tau_sequence: limit must be in [2, 1e5]");
  const auto tau = tau_table(limit);
  EigenvalueSequence seq;
  seq.source = Source::Tau;
  const PrimeTable table = sieve_primes(limit);
  for (long long p : table.primes) {
    const double pd = static_cast<double>(p);
    const double bound = 2.0 * std::pow(pd, 5.5);
    const double t = tau[static_cast<std::size_t>(p)].convert_to<double>();
    // Deligne bound as a data-integrity guard on the recurrence output.
    if (std::abs(t) > bound)
      throw std::runtime_error("tau_sequence: Deligne bound violated at p=" +
                               std::to_string(p));
    seq.entries.push_back({p, t / std::pow(pd, 5.5)});
  }
  return seq;
}

// Semicircle sampler: a = 2 cos(theta), theta proposed uniformly on [0, pi]
// and accepted with probability sin^2(theta).
inline EigenvalueSequence sample_sato_tate(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_sato_tate: n must be positive");
  constexpr double kPi = 3.14159265358979323846;
  const PrimeTable table = first_n_primes(n);
  EigenvalueSequence seq;
  seq.source = Source::SatoTate;
  seq.entries.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    double a;
    for (;;) {
      const double theta = kPi * rng.uniform();
      const double sn = std::sin(theta);
      if (rng.uniform() < sn * sn) {
        a = 2.0 * std::cos(theta);
        break;
      }
    }
    seq.entries.push_back({table.primes[i], a});
  }
  return seq;
}

// Dihedral-type control: a_p = 0 half the time, otherwise 2 cos(theta) with
// theta uniform. Fourth moment 3 instead of the semicircle value 2.
inline EigenvalueSequence sample_dihedral(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_dihedral: n must be positive");
  constexpr double kPi = 3.14159265358979323846;
  const PrimeTable table = first_n_primes(n);
  EigenvalueSequence seq;
  seq.source = Source::Dihedral;
  seq.entries.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    double a = 0.0;
    if (rng.uniform() >= 0.5) a = 2.0 * std::cos(kPi * rng.uniform());
    seq.entries.push_back({table.primes[i], a});
  }
  return seq;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("csv line " + std::to_string(line) + ": " + what) {}
  explicit CsvError(const std::string& what) : std::runtime_error(what) {}
};

// Schema: optional '#' comment lines (a '# excluded: p1 p2 ...' comment
// declares the set T), then the exact header 'p,a_p', then 'prime,value'
// records. LF or CRLF line endings.
inline EigenvalueSequence parse_csv(std::istream& in) {
  EigenvalueSequence seq;
  seq.source = Source::Csv;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header_seen) throw CsvError(lineno, "comment after header");
      std::string body = line.substr(1);
      std::istringstream ss(body);
      std::string word;
      ss >> word;
      if (word == "excluded:") {
        long long p;
        while (ss >> p) {
          if (!is_prime(p)) throw CsvError(lineno, "excluded entry is not prime");
          seq.excluded.push_back(p);
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != "p,a_p") throw CsvError(lineno, "expected header 'p,a_p'");
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw CsvError(lineno, "expected 'p,a_p' record");
    long long p;
    double a;
    try {
      std::size_t used = 0;
      p = std::stoll(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing characters");
      const std::string rest = line.substr(comma + 1);
      a = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw CsvError(lineno, "malformed record '" + line + "'");
    }
    if (!is_prime(p)) throw CsvError(lineno, "index " + std::to_string(p) + " is not prime");
    if (!std::isfinite(a)) throw CsvError(lineno, "non-finite eigenvalue");
    seq.entries.push_back({p, a});
  }
  if (!header_seen) throw CsvError("missing header 'p,a_p'");
  if (seq.entries.empty()) throw CsvError("empty data section");
  std::sort(seq.entries.begin(), seq.entries.end(),
            [](const auto& x, const auto& y) { return x.p < y.p; });
  for (std::size_t i = 1; i < seq.entries.size(); ++i)
    if (seq.entries[i].p == seq.entries[i - 1].p)
      throw CsvError("duplicate prime " + std::to_string(seq.entries[i].p));
  std::sort(seq.excluded.begin(), seq.excluded.end());
  for (long long p : seq.excluded)
    if (std::any_of(seq.entries.begin(), seq.entries.end(),
                    [p](const auto& e) { return e.p == p; }))
      throw CsvError("prime " + std::to_string(p) + " both listed and excluded");
  return seq;
}

inline EigenvalueSequence load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path + "'");
  try {
    return parse_csv(in);
  } catch (const CsvError& e) {
    throw CsvError(path + ": " + e.what());
  }
}

// Shortest round-trip float formatting, so decimal inputs survive a
// load/write cycle byte-for-byte.
inline void write_csv(const EigenvalueSequence& seq, std::ostream& out) {
  if (!seq.excluded.empty()) {
    out << "# excluded:";
    for (long long p : seq.excluded) out << ' ' << p;
    out << '\n';
  }
  out << "p,a_p\n";
  for (const auto& e : seq.entries) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof buf, e.a);
    out << e.p << ',' << std::string_view(buf, res.ptr - buf) << '\n';
  }
}

struct KimSarnakViolation {
  long long p;
  double a;
  double bound;
};

// Entries with |a_p| strictly above 2 p^{7/64}.
inline std::vector<KimSarnakViolation> validate_kim_sarnak(
    const EigenvalueSequence& seq) {
  std::vector<KimSarnakViolation> out;
  for (const auto& e : seq.entries) {
    const double bound = 2.0 * std::pow(static_cast<double>(e.p), 7.0 / 64.0);
    if (std::abs(e.a) > bound) out.push_back({e.p, e.a, bound});
  }
  return out;
}

}  // namespace hecke::sources
