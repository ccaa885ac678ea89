#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace mds22 {

/// A field element. For prime fields this is the residue, for GF(2^m) the
/// polynomial bit pattern (bit i is the coefficient of x^i).
using Symbol = std::uint32_t;

enum class FieldKind { prime, binary };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Finite field GF(q) with 2 <= q <= 2^16, either prime or a binary
/// extension. Immutable once built; share through FieldPtr.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  static FieldPtr prime(std::uint32_t p);
  /// GF(2^m) with the default modulus for m (0x11D for m = 8).
  static FieldPtr binary(unsigned m);
  static FieldPtr binary(unsigned m, std::uint32_t modulus);
  /// Parses `gf:p=<prime>`, `gf:2^<m>` or `gf:2^<m>/0x<poly>`.
  static FieldPtr parse(std::string_view spec);

  FieldKind kind() const noexcept { return kind_; }
  std::uint32_t order() const noexcept { return order_; }
  std::uint32_t characteristic() const noexcept { return kind_ == FieldKind::prime ? order_ : 2; }
  /// Extension degree m (1 for prime fields).
  unsigned degree() const noexcept { return degree_; }
  /// Reduction polynomial of a binary field; 0 for prime fields.
  std::uint32_t modulus() const noexcept { return modulus_; }
  /// Primitive element chosen at construction: smallest value of order q-1.
  Symbol generator() const noexcept { return generator_; }
  bool is_default_modulus() const noexcept;

  bool contains(Symbol a) const noexcept { return a < order_; }

  Symbol add(Symbol a, Symbol b) const noexcept {
    if (kind_ == FieldKind::binary) return a ^ b;
    Symbol s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  Symbol sub(Symbol a, Symbol b) const noexcept {
    if (kind_ == FieldKind::binary) return a ^ b;
    return a >= b ? a - b : a + order_ - b;
  }
  Symbol neg(Symbol a) const noexcept {
    if (kind_ == FieldKind::binary || a == 0) return a;
    return order_ - a;
  }
  Symbol mul(Symbol a, Symbol b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (kind_ == FieldKind::prime)
      return static_cast<Symbol>((std::uint64_t{a} * b) % order_);
    return exp_[log_[a] + log_[b]];
  }
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const;
  Symbol pow(Symbol a, std::uint64_t e) const noexcept;
  /// Multiplicative order of a nonzero element.
  std::uint32_t element_order(Symbol a) const;

  /// Canonical descriptor, e.g. `gf:p=11`, `gf:2^8`, `gf:2^4/0x19`.
  std::string describe() const;
  bool same_as(const Field& other) const noexcept {
    return kind_ == other.kind_ && order_ == other.order_ && modulus_ == other.modulus_;
  }

 private:
  Field(FieldKind kind, std::uint32_t order, unsigned degree, std::uint32_t modulus);
  Symbol slow_mul(Symbol a, Symbol b) const noexcept;
  void build_tables();

  FieldKind kind_;
  std::uint32_t order_;
  unsigned degree_;
  std::uint32_t modulus_;
  Symbol generator_ = 1;
  // exp_ is doubled so mul needs no reduction of the log sum.
  std::vector<Symbol> exp_;
  std::vector<std::uint32_t> log_;
};

Symbol primitive_element(const Field& field);

std::uint32_t default_binary_modulus(unsigned m);
bool is_prime(std::uint64_t v) noexcept;
/// Irreducibility of a GF(2) polynomial given as a bit pattern.
bool is_irreducible_gf2(std::uint32_t poly) noexcept;

}  // namespace mds22
