#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace walters {

struct ConstantTail {
  double limit = 0.0;
};

/// s_n = limit + coeff * ratio^n beyond the prefix; requires 0 < |ratio| < 1.
struct GeometricTail {
  double limit = 0.0;
  double coeff = 0.0;
  double ratio = 0.5;
};

using TailModel = std::variant<ConstantTail, GeometricTail>;

/// One defining sequence of a Walters potential: exact values s_start..s_N
/// followed by an analytic tail. All sums are exact (closed-form geometric
/// tails), so the infinite series built on top never truncate blindly.
class SequenceSpec {
 public:
  SequenceSpec(int start_index, std::vector<double> prefix, TailModel tail);

  static SequenceSpec constant(int start_index, double value);

  int start_index() const noexcept { return start_; }
  /// Last index held in the prefix (start_index - 1 when the prefix is empty).
  int last_prefix_index() const noexcept {
    return start_ + static_cast<int>(prefix_.size()) - 1;
  }
  std::span<const double> prefix() const noexcept { return prefix_; }
  const TailModel& tail() const noexcept { return tail_; }
  double limit() const noexcept;

  double value_at(int n) const;
  /// s_n - limit, computed without cancellation in the tail region.
  double deviation_at(int n) const;

  /// s_{q+1} + ... + s_{q+j}; zero when j == 0.
  double partial_sum(int q, int j) const;
  /// (s_{q+1} - limit) + ... + (s_{q+j} - limit).
  double deviation_sum(int q, int j) const;
  /// sum_{j >= 1} (s_{q+j} - limit).
  double tail_sum(int q) const;

  /// Upper bound on |s_m - limit| for every m >= n. Only meaningful (and
  /// only tight) for n beyond the prefix.
  double deviation_bound(int n) const;
  /// Upper bound on |sum_{m > n} (s_m - limit)| for n >= last_prefix_index().
  double tail_sum_bound(int n) const;

  /// sup_n s_n together with the limit (the closure of the value set).
  double supremum() const;

  /// Every s_n equals the limit.
  bool is_constant() const;
  /// Every s_n is strictly negative.
  bool all_strictly_negative() const;

 private:
  double tail_coeff() const noexcept;
  double tail_ratio() const noexcept;

  int start_;
  std::vector<double> prefix_;
  TailModel tail_;
};

enum class Symbol : std::uint8_t { Zero = 0, One = 1 };

inline Symbol flip(Symbol s) noexcept {
  return s == Symbol::Zero ? Symbol::One : Symbol::Zero;
}
inline char to_char(Symbol s) noexcept { return s == Symbol::Zero ? '0' : '1'; }

/// A class of points of X described by their first two runs. f and h_t are
/// constant on each class:
///   lead^p flip(lead) ...          first = p, second = kAny   (p >= 2 pins f)
///   lead flip(lead)^q lead ...     first = 1, second = q
///   lead^inf                       first = kInfinite
///   lead flip(lead)^inf            first = 1, second = kInfinite
struct PatternPoint {
  static constexpr int kInfinite = std::numeric_limits<int>::max();
  static constexpr int kAny = 0;

  Symbol lead = Symbol::Zero;
  int first = kInfinite;
  int second = kAny;

  static PatternPoint zero_inf() { return {Symbol::Zero, kInfinite, kAny}; }
  static PatternPoint one_inf() { return {Symbol::One, kInfinite, kAny}; }
  /// 0^p 1 z
  static PatternPoint zero_run(int p);
  /// 1^p 0 z
  static PatternPoint one_run(int p);
  /// 0 1^q 0 z
  static PatternPoint zero_one_run(int q);
  /// 1 0^q 1 z
  static PatternPoint one_zero_run(int q);
  static PatternPoint zero_one_inf() { return {Symbol::Zero, 1, kInfinite}; }
  static PatternPoint one_zero_inf() { return {Symbol::One, 1, kInfinite}; }

  bool first_infinite() const noexcept { return first == kInfinite; }
  /// True when f is constant on the class (both runs needed are pinned).
  bool determines_f() const noexcept {
    return first >= 2 || (first == 1 && second != kAny);
  }

  /// Class of s·x for x in this class.
  PatternPoint prepend(Symbol s) const;

  std::string label() const;

  friend bool operator==(const PatternPoint&, const PatternPoint&) = default;
};

struct Run {
  Symbol symbol;
  int length;
};

/// Finite nonempty binary word; names the cylinder [w].
class Word {
 public:
  explicit Word(std::string_view bits);
  static Word repeat(Symbol s, int n);

  std::size_t size() const noexcept { return bits_.size(); }
  Symbol at(std::size_t i) const noexcept {
    return bits_[i] == '0' ? Symbol::Zero : Symbol::One;
  }
  const std::string& str() const noexcept { return bits_; }
  const std::vector<Run>& runs() const noexcept { return runs_; }

  /// sigma(w): drops the first symbol; requires size() >= 2.
  Word shifted() const;
  Word prepended(Symbol s) const;
  Word appended(Symbol s) const;

  friend bool operator==(const Word& a, const Word& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const Word& a, const Word& b) { return a.bits_ < b.bits_; }

 private:
  std::string bits_;
  std::vector<Run> runs_;
};

/// All words of the given length, in lexicographic order.
std::vector<Word> all_words(int length);

/// Walters-class potential given by a_n (n>=2), b_n (n>=1), c_n (n>=2),
/// d_n (n>=1) and their limits.
class WaltersPotential {
 public:
  WaltersPotential(SequenceSpec a, SequenceSpec b, SequenceSpec c, SequenceSpec d);

  const SequenceSpec& a_seq() const noexcept { return a_; }
  const SequenceSpec& b_seq() const noexcept { return b_; }
  const SequenceSpec& c_seq() const noexcept { return c_; }
  const SequenceSpec& d_seq() const noexcept { return d_; }

  double a() const noexcept { return a_.limit(); }
  double b() const noexcept { return b_.limit(); }
  double c() const noexcept { return c_.limit(); }
  double d() const noexcept { return d_.limit(); }

  /// Same potential plus a constant on every value and limit.
  WaltersPotential shifted_by(double kappa) const;
  /// Potential with the roles of the symbols 0 and 1 exchanged.
  WaltersPotential mirrored() const;

 private:
  SequenceSpec a_, b_, c_, d_;
};

double pattern_value(const WaltersPotential& f, const PatternPoint& p);

/// Value of f on the cylinder [w] if f is constant there.
std::optional<double> f_on_word(const WaltersPotential& f, const Word& w);

inline double partial_sum(const SequenceSpec& s, int q, int j) { return s.partial_sum(q, j); }
inline double tail_sum(const SequenceSpec& s, int q) { return s.tail_sum(q); }

/// Supremum of f over X (all sequence values and limits).
double sup_f(const WaltersPotential& f);

}  // namespace walters
