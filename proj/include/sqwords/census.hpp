#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sqwords/squares.hpp"
#include "sqwords/verifier.hpp"

namespace sqwords {

class checkpoint_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class Float>
std::optional<long long> ceil_conjecture_bound(std::size_t n, int digits) {
  const Float x = Float(n) + 1 - sqrt(Float(n)) - log(Float(n)) / (2 * log(Float(2)));
  // Generous error bound for a handful of correctly rounded operations.
  const Float eps = pow(Float(10), -(digits - 10)) * (n + 2);
  const Float lo = ceil(x - eps);
  const Float hi = ceil(x + eps);
  if (lo != hi) return std::nullopt;
  return lo.template convert_to<long long>();
}

}  // namespace detail

/// ⌈n + 1 - √n - log₂(√n)⌉.
///
/// When n = 4^k the argument is the integer n + 1 - 2^k - k and is returned
/// exactly. Otherwise it is irrational; it is evaluated in binary floating
/// point with 50, then 100, then 200 decimal digits until the error interval
/// no longer contains an integer.
inline long long conjecture_bound(std::size_t n) {
  if (n == 0) throw domain_error("conjecture_bound: n must be positive");
  {
    std::size_t root = 1, k = 0;
    while (root * root < n) {
      root *= 2;
      ++k;
    }
    if (root * root == n) return static_cast<long long>(n + 1 - root - k);
  }
  using namespace boost::multiprecision;
  if (auto v = detail::ceil_conjecture_bound<cpp_bin_float_50>(n, 50)) return *v;
  if (auto v = detail::ceil_conjecture_bound<cpp_bin_float_100>(n, 100)) return *v;
  if (auto v = detail::ceil_conjecture_bound<number<cpp_bin_float<200>>>(n, 200)) return *v;
  throw std::logic_error("conjecture_bound: could not separate value from an integer");
}

inline constexpr std::size_t default_census_cap = 22;
inline constexpr std::size_t max_witnesses = 100;
inline constexpr std::size_t max_census_sigma = 26;

/// Census cap on n; SQUARE_CENSUS_CAP overrides the default.
inline std::size_t census_cap() {
  if (const char* env = std::getenv("SQUARE_CENSUS_CAP"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::size_t>(v);
  }
  return default_census_cap;
}

/// Words in first-occurrence canonical form over letters 0..σ-1.
inline Word canonical_form(const Word& w) {
  letter_t map[256];
  bool seen[256] = {};
  letter_t next = 0;
  std::vector<letter_t> out;
  out.reserve(w.size());
  for (letter_t c : w.letters()) {
    if (!seen[c]) {
      seen[c] = true;
      map[c] = next++;
    }
    out.push_back(map[c]);
  }
  return Word(out);
}

/// Maximum |SQ| over one block of the word space and the words attaining it.
struct PartialMax {
  std::size_t max_sq = 0;
  std::size_t witness_count = 0;
  std::vector<Word> witnesses;  // first max_witnesses, lexicographic

  void offer(std::size_t sq, const Word& w) {
    if (witness_count == 0 || sq > max_sq) {
      max_sq = sq;
      witness_count = 0;
      witnesses.clear();
    }
    if (sq == max_sq) {
      ++witness_count;
      if (witnesses.size() < max_witnesses) witnesses.push_back(w);
    }
  }

  /// Order-independent as long as each part keeps its own lexicographically
  /// first witnesses.
  void merge(const PartialMax& other) {
    if (other.witness_count == 0) return;
    if (witness_count == 0 || other.max_sq > max_sq) {
      *this = other;
      return;
    }
    if (other.max_sq < max_sq) return;
    witness_count += other.witness_count;
    witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
    std::sort(witnesses.begin(), witnesses.end());
    if (witnesses.size() > max_witnesses) witnesses.resize(max_witnesses);
  }
};

struct CensusRow {
  std::size_t n = 0;
  std::size_t sigma = 0;
  std::size_t max_sq = 0;
  std::size_t witness_count = 0;
  std::vector<Word> witnesses;
  long long conjecture_rhs = 0;
  bool conjecture_pass = false;
};

/// Append-only record of finished partitions, so an interrupted census can
/// resume without redoing them.
///
///   sqwords-census-checkpoint 1
///   sigma <σ>
///   part <n> <prefix> <max_sq> <witness_count> <w1,w2,...|->
class Checkpoint {
 public:
  static constexpr const char* magic = "sqwords-census-checkpoint";
  static constexpr int version = 1;

  Checkpoint(std::filesystem::path path, std::size_t sigma) : path_(std::move(path)), sigma_(sigma) {
    std::ifstream in(path_);
    if (in) {
      load(in);
    } else {
      std::ofstream out(path_);
      if (!out) throw checkpoint_error("cannot create checkpoint " + path_.string());
      out << magic << ' ' << version << "\nsigma " << sigma_ << '\n';
    }
  }

  const PartialMax* find(std::size_t n, const Word& prefix) const {
    std::lock_guard lock(mutex_);
    auto it = done_.find({n, prefix});
    return it == done_.end() ? nullptr : &it->second;
  }

  void record(std::size_t n, const Word& prefix, const PartialMax& part) {
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    out << "part " << n << ' ' << token(prefix) << ' ' << part.max_sq << ' ' << part.witness_count << ' ';
    if (part.witnesses.empty()) out << '-';
    for (std::size_t i = 0; i < part.witnesses.size(); ++i) out << (i ? "," : "") << token(part.witnesses[i]);
    out << '\n';
    out.flush();
    if (!out) throw checkpoint_error("cannot write checkpoint " + path_.string());
    done_[{n, prefix}] = part;
  }

  std::size_t size() const noexcept { return done_.size(); }

 private:
  static std::string token(const Word& w) { return w.empty() ? std::string("-") : display(w); }

  Word parse_word(const std::string& text) const {
    if (text == "-") return {};
    std::vector<letter_t> letters;
    for (char c : text) {
      if (c < 'a' || static_cast<std::size_t>(c - 'a') >= sigma_) {
        throw checkpoint_error("checkpoint: bad letter in '" + text + "'");
      }
      letters.push_back(static_cast<letter_t>(c - 'a'));
    }
    return Word(letters);
  }

  void load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != std::string(magic) + ' ' + std::to_string(version)) {
      throw checkpoint_error("checkpoint: missing or unsupported header");
    }
    if (!std::getline(in, line) || line != "sigma " + std::to_string(sigma_)) {
      throw checkpoint_error("checkpoint: alphabet size does not match");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::string tag, prefix, list;
      std::size_t n = 0;
      PartialMax part;
      if (!(fields >> tag >> n >> prefix >> part.max_sq >> part.witness_count >> list) || tag != "part") {
        throw checkpoint_error("checkpoint: malformed line '" + line + "'");
      }
      if (list != "-") {
        std::istringstream ws(list);
        std::string item;
        while (std::getline(ws, item, ',')) part.witnesses.push_back(parse_word(item));
      }
      if (part.witnesses.size() > part.witness_count || part.witnesses.size() > max_witnesses) {
        throw checkpoint_error("checkpoint: inconsistent witness list");
      }
      done_[{n, parse_word(prefix)}] = std::move(part);
    }
  }

  std::filesystem::path path_;
  std::size_t sigma_;
  std::map<std::pair<std::size_t, Word>, PartialMax> done_;
  mutable std::mutex mutex_;
};

struct CensusOptions {
  std::size_t jobs = 1;
  std::size_t prefix_length = 10;
  std::optional<std::size_t> cap;  // defaults to census_cap()
  std::optional<std::filesystem::path> checkpoint;
  /// Run verify_all on one word in every 2^k of each partition; 0 disables.
  unsigned verify_sample_log2 = 0;
};

/// Exhaustive maximum of |SQ(w)| over all words of length n over σ letters.
///
/// |SQ| is invariant under renaming letters, so only first-occurrence canonical
/// words are enumerated. The space is split by canonical prefixes; each
/// partition is scanned independently and the results are merged in prefix
/// order, so the output does not depend on the number of workers.
class Census {
 public:
  Census(std::size_t sigma, CensusOptions options = {}) : sigma_(sigma), options_(std::move(options)) {
    if (sigma_ == 0 || sigma_ > max_census_sigma) {
      throw std::invalid_argument("census: alphabet size must be in [1.." + std::to_string(max_census_sigma) + "]");
    }
    if (options_.jobs == 0) options_.jobs = 1;
    if (options_.checkpoint) checkpoint_.emplace(*options_.checkpoint, sigma_);
  }

  std::size_t sigma() const noexcept { return sigma_; }

  CensusRow run(std::size_t n) {
    const std::size_t cap = options_.cap.value_or(census_cap());
    if (n == 0) throw std::invalid_argument("census: n must be positive");
    if (n > cap) {
      throw resource_error("census: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap) +
                           " (set SQUARE_CENSUS_CAP to raise it)");
    }
    const std::vector<Word> prefixes = canonical_words(std::min(n, options_.prefix_length));
    std::vector<PartialMax> parts(prefixes.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
      SquareScanner scanner;
      for (std::size_t i = next++; i < prefixes.size(); i = next++) {
        try {
          if (const PartialMax* done = checkpoint_ ? checkpoint_->find(n, prefixes[i]) : nullptr) {
            parts[i] = *done;
            continue;
          }
          parts[i] = scan_partition(n, prefixes[i], scanner);
          if (checkpoint_) checkpoint_->record(n, prefixes[i], parts[i]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = prefixes.size();
        }
      }
    };
    const std::size_t workers = std::min(options_.jobs, prefixes.size());
    std::vector<std::thread> threads;
    for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);

    PartialMax total;
    for (const auto& p : parts) total.merge(p);
    CensusRow row{n, sigma_, total.max_sq, total.witness_count, std::move(total.witnesses)};
    row.conjecture_rhs = conjecture_bound(n);
    row.conjecture_pass = static_cast<long long>(row.max_sq) <= row.conjecture_rhs;
    return row;
  }

  /// Canonical words of length `len` in lexicographic order.
  std::vector<Word> canonical_words(std::size_t len) const {
    std::vector<Word> out;
    std::vector<letter_t> buf(len);
    extend(buf, 0, 0, [&](std::span<const letter_t> w) { out.emplace_back(w); });
    return out;
  }

 private:
  /// Fills buf[pos..] with every canonical continuation; `used` letters so far.
  template <class Visit>
  void extend(std::vector<letter_t>& buf, std::size_t pos, std::size_t used, Visit&& visit) const {
    if (pos == buf.size()) {
      visit(std::span<const letter_t>(buf));
      return;
    }
    const std::size_t limit = std::min(sigma_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      buf[pos] = static_cast<letter_t>(c);
      extend(buf, pos + 1, std::max(used, c + 1), visit);
    }
  }

  PartialMax scan_partition(std::size_t n, const Word& prefix, SquareScanner& scanner) const {
    std::vector<letter_t> buf(n);
    std::size_t used = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      buf[i] = prefix[i];
      used = std::max<std::size_t>(used, prefix[i] + 1u);
    }
    PartialMax part;
    const std::size_t mask = options_.verify_sample_log2 ? (std::size_t{1} << options_.verify_sample_log2) - 1 : 0;
    std::size_t index = 0;
    extend(buf, prefix.size(), used, [&](std::span<const letter_t> letters) {
      const std::size_t sq = scanner.count(letters);
      if (part.witness_count == 0 || sq >= part.max_sq) part.offer(sq, Word(letters));
      if (options_.verify_sample_log2 && (index & mask) == 0) {
        const Word w(letters);
        const VerificationReport report = verify_all(w);
        if (!report.pass) {
          throw std::logic_error("verify_all failed on census word " + display(w) + ": " +
                                 to_json(report).dump());
        }
      }
      ++index;
    });
    return part;
  }

  std::size_t sigma_;
  CensusOptions options_;
  std::optional<Checkpoint> checkpoint_;
};

/// Convenience wrapper: one census row.
inline CensusRow max_distinct_squares(std::size_t n, std::size_t sigma, CensusOptions options = {}) {
  return Census(sigma, std::move(options)).run(n);
}

/// The binary census row judged against the conjectured bound.
inline CensusRow check_conjecture(std::size_t n, CensusOptions options = {}) {
  return max_distinct_squares(n, 2, std::move(options));
}

struct DensityRow {
  std::size_t n;
  std::size_t max_sq;
  rational density;
};

inline std::vector<DensityRow> density_table(std::size_t n_min, std::size_t n_max, std::size_t sigma,
                                             CensusOptions options = {}) {
  Census census(sigma, std::move(options));
  std::vector<DensityRow> rows;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const CensusRow row = census.run(n);
    rows.push_back({n, row.max_sq, rational(row.max_sq, n)});
  }
  return rows;
}

inline constexpr const char* census_tsv_header =
    "n\tsigma\tmax_sq\tconjecture_rhs\tpass\twitness_count\tfirst_witness";

inline std::string to_tsv(const CensusRow& row) {
  std::ostringstream os;
  os << row.n << '\t' << row.sigma << '\t' << row.max_sq << '\t' << row.conjecture_rhs << '\t'
     << (row.conjecture_pass ? "true" : "false") << '\t' << row.witness_count << '\t'
     << (row.witnesses.empty() ? std::string("-") : display(row.witnesses.front()));
  return os.str();
}

}  // namespace sqwords
