#pragma once

// Finitary operations f : {0,...,k-1}^n -> {0,...,k-1} stored as flat truth
// tables.  Tuples are addressed by a big-endian mixed-radix code (the first
// argument is the most significant digit), so the table index of a tuple and
// the lexicographic order of tuples coincide.  Boolean tables (k = 2) are
// bit-packed; other bases use one byte per entry.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cminor {

using Value = std::uint8_t;
using Code = std::uint64_t;

/// Thrown when an enumeration or search would exceed a configured cap or
/// budget.  The message names the cap that was hit.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// k^n, with overflow detection.
inline Code table_cells(int k, int n) {
  if (k < 2) throw std::invalid_argument("base size must be at least 2");
  if (n < 0) throw std::invalid_argument("arity must be nonnegative");
  Code r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > std::numeric_limits<Code>::max() / static_cast<Code>(k))
      throw std::overflow_error("table size k^n overflows 64 bits");
    r *= static_cast<Code>(k);
  }
  return r;
}

/// enc(a_1,...,a_n) = sum a_i * k^(n-i); a_1 is the most significant digit.
inline Code encode_tuple(std::span<const Value> tuple, int k) {
  if (tuple.empty()) throw std::invalid_argument("cannot encode an empty tuple");
  Code code = 0;
  for (Value v : tuple) {
    if (static_cast<int>(v) >= k)
      throw std::invalid_argument("tuple entry out of range for base " + std::to_string(k));
    code = code * static_cast<Code>(k) + v;
  }
  return code;
}

inline void decode_tuple(Code code, int k, int n, std::span<Value> out) {
  if (static_cast<int>(out.size()) != n)
    throw std::invalid_argument("decode buffer has wrong length");
  for (int i = n - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<Value>(code % static_cast<Code>(k));
    code /= static_cast<Code>(k);
  }
  if (code != 0) throw std::invalid_argument("tuple code out of range");
}

inline std::vector<Value> decode_tuple(Code code, int k, int n) {
  std::vector<Value> out(static_cast<std::size_t>(n));
  decode_tuple(code, k, n, out);
  return out;
}

/// An immutable finitary operation on {0,...,k-1}.
class FiniteOp {
 public:
  FiniteOp(int k, int n, std::span<const Value> table) : FiniteOp(raw_tag{}, k, n) {
    if (table.size() != size_) throw std::invalid_argument("table length must be k^n");
    for (Code i = 0; i < size_; ++i) {
      if (static_cast<int>(table[i]) >= k)
        throw std::invalid_argument("table entry out of range for base " + std::to_string(k));
      set_entry(i, table[i]);
    }
  }

  FiniteOp(int k, int n, const std::vector<Value>& table)
      : FiniteOp(k, n, std::span<const Value>(table)) {}

  /// Builds the table by evaluating `fn` on every tuple, in code order.
  template <typename Fn>
  static FiniteOp from_fn(int k, int n, Fn&& fn) {
    FiniteOp op(raw_tag{}, k, n);
    std::vector<Value> args(static_cast<std::size_t>(n), 0);
    for (Code i = 0; i < op.size_; ++i) {
      const Value v = static_cast<Value>(fn(std::span<const Value>(args)));
      if (static_cast<int>(v) >= k) throw std::invalid_argument("operation value out of range");
      op.set_entry(i, v);
      // advance the odometer (last coordinate least significant)
      for (int j = n - 1; j >= 0; --j) {
        auto& d = args[static_cast<std::size_t>(j)];
        if (++d < k) break;
        d = 0;
      }
    }
    return op;
  }

  /// Builds the table from a function of the tuple code.
  template <typename Fn>
  static FiniteOp from_index_fn(int k, int n, Fn&& fn) {
    FiniteOp op(raw_tag{}, k, n);
    for (Code i = 0; i < op.size_; ++i) {
      const Value v = static_cast<Value>(fn(i));
      if (static_cast<int>(v) >= k) throw std::invalid_argument("operation value out of range");
      op.set_entry(i, v);
    }
    return op;
  }

  /// Parses the text form "k:n:digits" (one digit per table cell, k <= 10).
  static FiniteOp parse(std::string_view text) {
    const auto bad = [&](const char* why) {
      return std::invalid_argument("cannot parse operation \"" + std::string(text) + "\": " + why);
    };
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw bad("expected \"k:n:digits\"");
    int k = 0, n = 0;
    try {
      k = std::stoi(std::string(text.substr(0, c1)));
      n = std::stoi(std::string(text.substr(c1 + 1, c2 - c1 - 1)));
    } catch (const std::exception&) {
      throw bad("base or arity is not a number");
    }
    if (k < 2 || k > 10) throw bad("text form requires 2 <= k <= 10");
    if (n < 1) throw bad("arity must be positive");
    const std::string_view digits = text.substr(c2 + 1);
    if (digits.size() != table_cells(k, n)) throw bad("digit count must be k^n");
    std::vector<Value> table;
    table.reserve(digits.size());
    for (char c : digits) {
      if (c < '0' || c >= '0' + k) throw bad("digit out of range");
      table.push_back(static_cast<Value>(c - '0'));
    }
    return FiniteOp(k, n, table);
  }

  std::string to_text() const {
    if (k_ > 10) throw std::invalid_argument("text form requires k <= 10");
    std::string s = std::to_string(k_) + ":" + std::to_string(n_) + ":";
    s.reserve(s.size() + size_);
    for (Code i = 0; i < size_; ++i) s.push_back(static_cast<char>('0' + value(i)));
    return s;
  }

  int base() const { return k_; }
  int arity() const { return n_; }
  Code table_size() const { return size_; }

  Value value(Code index) const {
    if (k_ == 2) return (data_[index >> 3] >> (index & 7)) & 1u;
    return data_[index];
  }

  Value apply(std::span<const Value> args) const {
    if (static_cast<int>(args.size()) != n_)
      throw std::invalid_argument("argument count does not match arity");
    return value(encode_tuple(args, k_));
  }

  Value operator()(std::initializer_list<Value> args) const {
    return apply(std::span<const Value>(args.begin(), args.size()));
  }

  std::vector<Value> table_values() const {
    std::vector<Value> t(size_);
    for (Code i = 0; i < size_; ++i) t[i] = value(i);
    return t;
  }

  friend bool operator==(const FiniteOp& a, const FiniteOp& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.data_ == b.data_;
  }

  /// Orders by (base, arity, table entries lexicographically).
  friend std::strong_ordering operator<=>(const FiniteOp& a, const FiniteOp& b) {
    if (auto c = a.k_ <=> b.k_; c != 0) return c;
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    for (Code i = 0; i < a.size_; ++i)
      if (auto c = a.value(i) <=> b.value(i); c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    const auto mix = [&h](std::size_t x) {
      h ^= x;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::size_t>(k_));
    mix(static_cast<std::size_t>(n_));
    for (std::uint8_t b : data_) mix(b);
    return h;
  }

 private:
  struct raw_tag {};
  FiniteOp(raw_tag, int k, int n) : k_(k), n_(n), size_(table_cells(k, n)) {
    if (n < 1) throw std::invalid_argument("arity must be positive");
    data_.assign(k == 2 ? static_cast<std::size_t>((size_ + 7) / 8)
                        : static_cast<std::size_t>(size_),
                 0);
  }

  void set_entry(Code index, Value v) {
    if (k_ == 2) {
      if (v)
        data_[index >> 3] |= static_cast<std::uint8_t>(1u << (index & 7));
      else
        data_[index >> 3] &= static_cast<std::uint8_t>(~(1u << (index & 7)));
    } else {
      data_[index] = v;
    }
  }

  int k_;
  int n_;
  Code size_;
  std::vector<std::uint8_t> data_;
};

struct FiniteOpHash {
  std::size_t operator()(const FiniteOp& f) const { return f.hash(); }
};

inline Value apply(const FiniteOp& f, std::span<const Value> args) { return f.apply(args); }

/// The i-th n-ary projection (1-based i).
inline FiniteOp projection(int k, int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("projection index out of range");
  const Code stride = table_cells(k, n - i);
  return FiniteOp::from_index_fn(
      k, n, [&](Code idx) { return static_cast<Value>((idx / stride) % static_cast<Code>(k)); });
}

/// The unary operation with constant value v.
inline FiniteOp constant_op(int k, Value v) {
  if (static_cast<int>(v) >= k) throw std::invalid_argument("constant value out of range");
  return FiniteOp::from_index_fn(k, 1, [&](Code) { return v; });
}

/// The ternary discriminator: t(x,y,z) = z if x = y, else x.
inline FiniteOp discriminator(int k) {
  return FiniteOp::from_fn(k, 3, [](std::span<const Value> a) {
    return a[0] == a[1] ? a[2] : a[0];
  });
}

/// x_1 + ... + x_n over the two-element field.
inline FiniteOp xor_chain(int n) {
  return FiniteOp::from_index_fn(2, n, [](Code idx) {
    return static_cast<Value>(std::popcount(idx) & 1);
  });
}

/// g(h_1,...,h_m) where every h_i has the same base and arity.
inline FiniteOp compose(const FiniteOp& g, std::span<const FiniteOp> hs) {
  if (hs.size() != static_cast<std::size_t>(g.arity()))
    throw std::invalid_argument("composition needs one inner operation per argument of g");
  const int k = g.base();
  const int n = hs.front().arity();
  for (const FiniteOp& h : hs)
    if (h.base() != k || h.arity() != n)
      throw std::invalid_argument("inner operations must share base and arity");
  return FiniteOp::from_index_fn(k, n, [&](Code idx) {
    Code inner = 0;
    for (const FiniteOp& h : hs) inner = inner * static_cast<Code>(k) + h.value(idx);
    return g.value(inner);
  });
}

inline FiniteOp compose(const FiniteOp& g, const std::vector<FiniteOp>& hs) {
  return compose(g, std::span<const FiniteOp>(hs));
}

/// Sorted list of values attained by f.
inline std::vector<Value> image(const FiniteOp& f) {
  std::vector<bool> hit(static_cast<std::size_t>(f.base()), false);
  for (Code i = 0; i < f.table_size(); ++i) hit[f.value(i)] = true;
  std::vector<Value> img;
  for (std::size_t v = 0; v < hit.size(); ++v)
    if (hit[v]) img.push_back(static_cast<Value>(v));
  return img;
}

/// Restriction of f to a subset B of the base, relabelled to {0,...,|B|-1}
/// in increasing order.  Requires f(B^n) to stay inside B.
inline FiniteOp restrict_to(const FiniteOp& f, std::span<const Value> subset) {
  const int k = f.base();
  if (subset.empty()) throw std::invalid_argument("restriction subset must be nonempty");
  std::vector<int> relabel(static_cast<std::size_t>(k), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (static_cast<int>(subset[i]) >= k)
      throw std::invalid_argument("restriction subset element out of range");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("restriction subset must be sorted and duplicate-free");
    relabel[subset[i]] = static_cast<int>(i);
  }
  const int kb = static_cast<int>(subset.size());
  if (kb < 2) throw std::invalid_argument("restriction needs at least two elements");
  const int n = f.arity();
  std::vector<Value> args(static_cast<std::size_t>(n), subset[0]);
  std::vector<Value> digits(static_cast<std::size_t>(n), 0);
  return FiniteOp::from_index_fn(kb, n, [&](Code) {
    const Value v = f.apply(args);
    if (relabel[v] < 0) {
      std::string t = "(";
      for (int j = 0; j < n; ++j) t += (j ? "," : "") + std::to_string(args[static_cast<std::size_t>(j)]);
      t += ")";
      throw std::invalid_argument("operation does not preserve the subset: f" + t + " = " +
                                  std::to_string(v));
    }
    const Value out = static_cast<Value>(relabel[v]);
    for (int j = n - 1; j >= 0; --j) {
      auto& d = digits[static_cast<std::size_t>(j)];
      if (++d < kb) {
        args[static_cast<std::size_t>(j)] = subset[d];
        break;
      }
      d = 0;
      args[static_cast<std::size_t>(j)] = subset[0];
    }
    return out;
  });
}

/// f extended with d - n fictitious trailing arguments.
inline FiniteOp pad_arity(const FiniteOp& f, int d) {
  if (d < f.arity()) throw std::invalid_argument("cannot pad to smaller arity");
  if (d == f.arity()) return f;
  const Code stride = table_cells(f.base(), d - f.arity());
  return FiniteOp::from_index_fn(f.base(), d, [&](Code idx) { return f.value(idx / stride); });
}

/// Number of arguments f actually depends on.
inline int essential_arity(const FiniteOp& f) {
  const int k = f.base();
  const int n = f.arity();
  int essential = 0;
  for (int i = 0; i < n; ++i) {
    const Code stride = table_cells(k, n - 1 - i);
    bool depends = false;
    for (Code idx = 0; idx < f.table_size() && !depends; ++idx) {
      if ((idx / stride) % static_cast<Code>(k) != 0) continue;
      const Value v0 = f.value(idx);
      for (int c = 1; c < k; ++c)
        if (f.value(idx + static_cast<Code>(c) * stride) != v0) {
          depends = true;
          break;
        }
    }
    essential += depends ? 1 : 0;
  }
  return essential;
}

}  // namespace cminor
