#include "walters/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "walters/errors.hpp"

namespace walters {

namespace {

constexpr const char* kModule = "potential";

struct TailParams {
  double limit;
  double coeff;
  double ratio;
};

TailParams params_of(const TailModel& tail) {
  if (const auto* g = std::get_if<GeometricTail>(&tail)) return {g->limit, g->coeff, g->ratio};
  return {std::get<ConstantTail>(tail).limit, 0.0, 0.0};
}

// sum_{n=lo}^{hi} r^n for lo <= hi
double geometric_range(double r, int lo, int hi) {
  return (std::pow(r, lo) - std::pow(r, static_cast<double>(hi) + 1.0)) / (1.0 - r);
}

}  // namespace

SequenceSpec::SequenceSpec(int start_index, std::vector<double> prefix, TailModel tail)
    : start_(start_index), prefix_(std::move(prefix)), tail_(tail) {
  if (start_ < 1) throw SpecError(kModule, "start_index must be >= 1");
  for (double v : prefix_) {
    if (!std::isfinite(v)) throw SpecError(kModule, "prefix values must be finite");
  }
  const auto p = params_of(tail_);
  if (!std::isfinite(p.limit) || !std::isfinite(p.coeff)) {
    throw SpecError(kModule, "tail parameters must be finite");
  }
  if (std::holds_alternative<GeometricTail>(tail_)) {
    if (!(std::abs(p.ratio) > 0.0 && std::abs(p.ratio) < 1.0)) {
      throw SpecError(kModule, "geometric tail ratio must satisfy 0 < |ratio| < 1");
    }
  }
}

SequenceSpec SequenceSpec::constant(int start_index, double value) {
  return SequenceSpec(start_index, {}, ConstantTail{value});
}

double SequenceSpec::limit() const noexcept { return params_of(tail_).limit; }
double SequenceSpec::tail_coeff() const noexcept { return params_of(tail_).coeff; }
double SequenceSpec::tail_ratio() const noexcept { return params_of(tail_).ratio; }

double SequenceSpec::value_at(int n) const {
  if (n >= start_ && n <= last_prefix_index()) return prefix_[static_cast<std::size_t>(n - start_)];
  return limit() + deviation_at(n);
}

double SequenceSpec::deviation_at(int n) const {
  if (n < start_) throw std::out_of_range("sequence index below start_index");
  if (n <= last_prefix_index()) return prefix_[static_cast<std::size_t>(n - start_)] - limit();
  const double coeff = tail_coeff();
  if (coeff == 0.0) return 0.0;
  return coeff * std::pow(tail_ratio(), n);
}

double SequenceSpec::partial_sum(int q, int j) const {
  return static_cast<double>(j) * limit() + deviation_sum(q, j);
}

double SequenceSpec::deviation_sum(int q, int j) const {
  if (j < 0) throw std::out_of_range("partial sum length must be >= 0");
  if (j == 0) return 0.0;
  const int lo = q + 1;
  const int hi = q + j;
  if (lo < start_) throw std::out_of_range("partial sum starts below start_index");
  const int last = last_prefix_index();
  double sum = 0.0;
  for (int n = lo; n <= std::min(hi, last); ++n) {
    sum += prefix_[static_cast<std::size_t>(n - start_)] - limit();
  }
  const double coeff = tail_coeff();
  const int tail_lo = std::max(lo, last + 1);
  if (coeff != 0.0 && tail_lo <= hi) sum += coeff * geometric_range(tail_ratio(), tail_lo, hi);
  return sum;
}

double SequenceSpec::tail_sum(int q) const {
  const int last = last_prefix_index();
  if (q + 1 < start_) throw std::out_of_range("tail sum starts below start_index");
  double sum = 0.0;
  for (int n = q + 1; n <= last; ++n) {
    sum += prefix_[static_cast<std::size_t>(n - start_)] - limit();
  }
  const double coeff = tail_coeff();
  if (coeff != 0.0) {
    const int m = std::max(q, last);
    const double r = tail_ratio();
    sum += coeff * std::pow(r, static_cast<double>(m) + 1.0) / (1.0 - r);
  }
  return sum;
}

double SequenceSpec::deviation_bound(int n) const {
  const int last = last_prefix_index();
  double bound = 0.0;
  for (int m = std::max(n, start_); m <= last; ++m) {
    bound = std::max(bound, std::abs(prefix_[static_cast<std::size_t>(m - start_)] - limit()));
  }
  const double coeff = tail_coeff();
  if (coeff != 0.0) {
    const int m = std::max(n, last + 1);
    bound = std::max(bound, std::abs(coeff) * std::pow(std::abs(tail_ratio()), m));
  }
  return bound;
}

double SequenceSpec::tail_sum_bound(int n) const {
  const int last = last_prefix_index();
  double bound = 0.0;
  for (int m = std::max(n + 1, start_); m <= last; ++m) {
    bound += std::abs(prefix_[static_cast<std::size_t>(m - start_)] - limit());
  }
  const double coeff = tail_coeff();
  if (coeff != 0.0) {
    const double r = std::abs(tail_ratio());
    const int m = std::max(n, last);
    bound += std::abs(coeff) * std::pow(r, static_cast<double>(m) + 1.0) / (1.0 - r);
  }
  return bound;
}

double SequenceSpec::supremum() const {
  double sup = limit();
  for (double v : prefix_) sup = std::max(sup, v);
  if (tail_coeff() != 0.0) {
    const int first = last_prefix_index() + 1;
    sup = std::max({sup, value_at(first), value_at(first + 1)});
  }
  return sup;
}

bool SequenceSpec::is_constant() const {
  const double lim = limit();
  return tail_coeff() == 0.0 &&
         std::all_of(prefix_.begin(), prefix_.end(), [lim](double v) { return v == lim; });
}

bool SequenceSpec::all_strictly_negative() const {
  if (std::any_of(prefix_.begin(), prefix_.end(), [](double v) { return v >= 0.0; })) {
    return false;
  }
  const auto p = params_of(tail_);
  if (p.coeff == 0.0) return p.limit < 0.0;
  if (p.limit < 0.0) {
    const int first = last_prefix_index() + 1;
    return value_at(first) < 0.0 && value_at(first + 1) < 0.0;
  }
  if (p.limit == 0.0) return p.coeff < 0.0 && p.ratio > 0.0;
  return false;
}

// ---------------------------------------------------------------------------

PatternPoint PatternPoint::zero_run(int p) {
  if (p < 1) throw std::invalid_argument("run length must be >= 1");
  return {Symbol::Zero, p, kAny};
}

PatternPoint PatternPoint::one_run(int p) {
  if (p < 1) throw std::invalid_argument("run length must be >= 1");
  return {Symbol::One, p, kAny};
}

PatternPoint PatternPoint::zero_one_run(int q) {
  if (q < 1) throw std::invalid_argument("run length must be >= 1");
  return {Symbol::Zero, 1, q};
}

PatternPoint PatternPoint::one_zero_run(int q) {
  if (q < 1) throw std::invalid_argument("run length must be >= 1");
  return {Symbol::One, 1, q};
}

PatternPoint PatternPoint::prepend(Symbol s) const {
  if (s == lead) {
    return {lead, first_infinite() ? kInfinite : first + 1, second};
  }
  return {s, 1, first};
}

std::string PatternPoint::label() const {
  const char l = to_char(lead);
  const char o = to_char(flip(lead));
  std::string out(1, l);
  if (first_infinite()) return out + "^inf";
  if (first >= 2 || second == kAny) return out + "^" + std::to_string(first) + " " + o + "*";
  if (second == kInfinite) return out + " " + o + "^inf";
  return out + " " + o + "^" + std::to_string(second) + " " + l + "*";
}

// ---------------------------------------------------------------------------

Word::Word(std::string_view bits) : bits_(bits) {
  if (bits_.empty()) throw SpecError(kModule, "word must be nonempty");
  for (char ch : bits_) {
    if (ch != '0' && ch != '1') throw SpecError(kModule, "word must be a binary string: " + bits_);
  }
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    const Symbol s = at(i);
    if (runs_.empty() || runs_.back().symbol != s) {
      runs_.push_back({s, 1});
    } else {
      ++runs_.back().length;
    }
  }
}

Word Word::repeat(Symbol s, int n) {
  if (n < 1) throw std::invalid_argument("word length must be >= 1");
  return Word(std::string(static_cast<std::size_t>(n), to_char(s)));
}

Word Word::shifted() const {
  if (bits_.size() < 2) throw std::invalid_argument("cannot shift a word of length 1");
  return Word(std::string_view(bits_).substr(1));
}

Word Word::prepended(Symbol s) const { return Word(std::string(1, to_char(s)) + bits_); }
Word Word::appended(Symbol s) const { return Word(bits_ + to_char(s)); }

std::vector<Word> all_words(int length) {
  std::vector<Word> out;
  if (length < 1 || length > 24) throw std::invalid_argument("word length out of range");
  const unsigned count = 1u << length;
  out.reserve(count);
  for (unsigned v = 0; v < count; ++v) {
    std::string bits(static_cast<std::size_t>(length), '0');
    for (int i = 0; i < length; ++i) {
      if ((v >> (length - 1 - i)) & 1u) bits[static_cast<std::size_t>(i)] = '1';
    }
    out.emplace_back(bits);
  }
  return out;
}

// ---------------------------------------------------------------------------

WaltersPotential::WaltersPotential(SequenceSpec a, SequenceSpec b, SequenceSpec c, SequenceSpec d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_.start_index() != 2 || c_.start_index() != 2) {
    throw SpecError(kModule, "a and c sequences start at index 2");
  }
  if (b_.start_index() != 1 || d_.start_index() != 1) {
    throw SpecError(kModule, "b and d sequences start at index 1");
  }
}

namespace {

SequenceSpec shift_sequence(const SequenceSpec& s, double kappa) {
  std::vector<double> prefix(s.prefix().begin(), s.prefix().end());
  for (double& v : prefix) v += kappa;
  TailModel tail = std::visit(
      [kappa](auto t) -> TailModel {
        t.limit += kappa;
        return t;
      },
      s.tail());
  return SequenceSpec(s.start_index(), std::move(prefix), tail);
}

}  // namespace

WaltersPotential WaltersPotential::shifted_by(double kappa) const {
  return WaltersPotential(shift_sequence(a_, kappa), shift_sequence(b_, kappa),
                          shift_sequence(c_, kappa), shift_sequence(d_, kappa));
}

WaltersPotential WaltersPotential::mirrored() const { return WaltersPotential(c_, d_, a_, b_); }

double pattern_value(const WaltersPotential& f, const PatternPoint& p) {
  if (!p.determines_f()) {
    throw std::invalid_argument("pattern does not pin f: " + p.label());
  }
  const bool zero = p.lead == Symbol::Zero;
  if (p.first_infinite()) return zero ? f.a() : f.c();
  if (p.first >= 2) return zero ? f.a_seq().value_at(p.first) : f.c_seq().value_at(p.first);
  if (p.second == PatternPoint::kInfinite) return zero ? f.b() : f.d();
  return zero ? f.b_seq().value_at(p.second) : f.d_seq().value_at(p.second);
}

std::optional<double> f_on_word(const WaltersPotential& f, const Word& w) {
  const auto& runs = w.runs();
  const bool zero = runs.front().symbol == Symbol::Zero;
  const int p = runs.front().length;
  if (p >= 2 && runs.size() >= 2) {
    return zero ? f.a_seq().value_at(p) : f.c_seq().value_at(p);
  }
  if (p == 1 && runs.size() >= 3) {
    const int q = runs[1].length;
    return zero ? f.b_seq().value_at(q) : f.d_seq().value_at(q);
  }
  return std::nullopt;
}

double sup_f(const WaltersPotential& f) {
  return std::max({f.a_seq().supremum(), f.b_seq().supremum(), f.c_seq().supremum(),
                   f.d_seq().supremum()});
}

}  // namespace walters
