#include "mds22/gf.hpp"

#include <array>
#include <bit>
#include <charconv>

#include "mds22/error.hpp"

namespace mds22 {

namespace {

// Primitive polynomials for m = 1..16, indexed by m.
constexpr std::array<std::uint32_t, 17> kDefaultModuli = {
    0x0,    0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,    0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

int poly_degree(std::uint32_t p) noexcept { return p == 0 ? -1 : 31 - std::countl_zero(p); }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) noexcept {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::uint64_t parse_uint(std::string_view text, int base, std::string_view spec) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw Error(Errc::bad_argument, "malformed field descriptor '" + std::string(spec) + "'");
  return value;
}

}  // namespace

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_prime: return "NotPrime";
    case Errc::reducible_modulus: return "ReducibleModulus";
    case Errc::no_generator_found: return "NoGeneratorFound";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::singular: return "Singular";
    case Errc::not_square: return "NotSquare";
    case Errc::singular_parity_pair: return "SingularParityPair";
    case Errc::has_erasures: return "HasErasures";
    case Errc::too_many_erasures: return "TooManyErasures";
    case Errc::bad_arity: return "BadArity";
    case Errc::field_too_small: return "FieldTooSmall";
    case Errc::mds_check_failed: return "MdsCheckFailed";
    case Errc::not_a_repair_matrix: return "NotARepairMatrix";
    case Errc::bad_helper_index: return "BadHelperIndex";
    case Errc::missing_payload: return "MissingPayload";
    case Errc::zero_matrix: return "ZeroMatrix";
    case Errc::field_too_large: return "FieldTooLarge";
    case Errc::not_mds: return "NotMds";
    case Errc::not_found: return "NotFound";
    case Errc::io_error: return "IoError";
    case Errc::too_few_shards: return "TooFewShards";
    case Errc::header_mismatch: return "HeaderMismatch";
    case Errc::missing_helper: return "MissingHelper";
    case Errc::bad_argument: return "BadArgument";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

bool is_irreducible_gf2(std::uint32_t poly) noexcept {
  const int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    for (std::uint32_t div = 1u << d; div < (2u << d); ++div)
      if (poly_mod(poly, div) == 0) return false;
  }
  return true;
}

std::uint32_t default_binary_modulus(unsigned m) {
  if (m < 1 || m > 16) throw Error(Errc::bad_argument, "binary field degree must be in [1, 16]");
  return kDefaultModuli[m];
}

Field::Field(FieldKind kind, std::uint32_t order, unsigned degree, std::uint32_t modulus)
    : kind_(kind), order_(order), degree_(degree), modulus_(modulus) {
  build_tables();
}

FieldPtr Field::prime(std::uint32_t p) {
  if (p > kMaxOrder) throw Error(Errc::bad_argument, "field order above 2^16");
  if (!is_prime(p)) throw Error(Errc::not_prime, std::to_string(p) + " is not prime");
  return FieldPtr(new Field(FieldKind::prime, p, 1, 0));
}

FieldPtr Field::binary(unsigned m) { return binary(m, default_binary_modulus(m)); }

FieldPtr Field::binary(unsigned m, std::uint32_t modulus) {
  if (m < 1 || m > 16) throw Error(Errc::bad_argument, "binary field degree must be in [1, 16]");
  if (poly_degree(modulus) != static_cast<int>(m))
    throw Error(Errc::reducible_modulus, "modulus degree differs from m");
  if (!is_irreducible_gf2(modulus))
    throw Error(Errc::reducible_modulus, "modulus is reducible over GF(2)");
  return FieldPtr(new Field(FieldKind::binary, 1u << m, m, modulus));
}

FieldPtr Field::parse(std::string_view spec) {
  constexpr std::string_view kPrime = "gf:p=";
  constexpr std::string_view kBinary = "gf:2^";
  if (spec.starts_with(kPrime)) {
    const auto p = parse_uint(spec.substr(kPrime.size()), 10, spec);
    if (p > kMaxOrder) throw Error(Errc::bad_argument, "field order above 2^16");
    return prime(static_cast<std::uint32_t>(p));
  }
  if (spec.starts_with(kBinary)) {
    auto rest = spec.substr(kBinary.size());
    const auto slash = rest.find('/');
    const auto m = parse_uint(rest.substr(0, slash), 10, spec);
    if (m < 1 || m > 16) throw Error(Errc::bad_argument, "binary field degree must be in [1, 16]");
    if (slash == std::string_view::npos) return binary(static_cast<unsigned>(m));
    auto poly = rest.substr(slash + 1);
    if (!poly.starts_with("0x") && !poly.starts_with("0X"))
      throw Error(Errc::bad_argument, "modulus must be written as 0x<hex>");
    const auto modulus = parse_uint(poly.substr(2), 16, spec);
    if (modulus >= (1u << 17)) throw Error(Errc::reducible_modulus, "modulus degree above 16");
    return binary(static_cast<unsigned>(m), static_cast<std::uint32_t>(modulus));
  }
  throw Error(Errc::bad_argument, "unknown field descriptor '" + std::string(spec) + "'");
}

bool Field::is_default_modulus() const noexcept {
  return kind_ == FieldKind::prime || modulus_ == kDefaultModuli[degree_];
}

Symbol Field::slow_mul(Symbol a, Symbol b) const noexcept {
  if (kind_ == FieldKind::prime) return static_cast<Symbol>((std::uint64_t{a} * b) % order_);
  std::uint32_t acc = 0;
  while (b != 0) {
    if (b & 1u) acc ^= a;
    b >>= 1;
    a <<= 1;
    if (a & order_) a ^= modulus_;
  }
  return acc;
}

void Field::build_tables() {
  const std::uint32_t group = order_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [this](Symbol a, std::uint32_t e) {
    Symbol r = 1;
    while (e != 0) {
      if (e & 1u) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  auto is_primitive = [&](Symbol g) {
    for (auto f : factors)
      if (slow_pow(g, group / f) == 1) return false;
    return true;
  };

  generator_ = 0;
  if (order_ == 2) {
    generator_ = 1;
  } else {
    for (Symbol g = 2; g < order_; ++g) {
      if (is_primitive(g)) {
        generator_ = g;
        break;
      }
    }
  }
  if (generator_ == 0) throw Error(Errc::no_generator_found, "no primitive element in " + describe());

  exp_.assign(2 * static_cast<std::size_t>(group), 0);
  log_.assign(order_, 0);
  Symbol x = 1;
  for (std::uint32_t i = 0; i < group; ++i) {
    exp_[i] = x;
    exp_[i + group] = x;
    log_[x] = i;
    x = slow_mul(x, generator_);
  }
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw Error(Errc::division_by_zero, "inverse of zero");
  const std::uint32_t group = order_ - 1;
  return exp_[(group - log_[a]) % group];
}

Symbol Field::div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

Symbol Field::pow(Symbol a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t group = order_ - 1;
  return exp_[static_cast<std::size_t>((log_[a] * (e % group)) % group)];
}

std::uint32_t Field::element_order(Symbol a) const {
  if (a == 0) throw Error(Errc::division_by_zero, "zero has no multiplicative order");
  std::uint32_t order = order_ - 1;
  for (auto f : prime_factors(order_ - 1)) {
    while (order % f == 0 && pow(a, order / f) == 1) order /= f;
  }
  return order;
}

std::string Field::describe() const {
  if (kind_ == FieldKind::prime) return "gf:p=" + std::to_string(order_);
  std::string out = "gf:2^" + std::to_string(degree_);
  if (!is_default_modulus()) {
    char buf[16];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, modulus_, 16);
    (void)ec;
    out += "/0x" + std::string(buf, ptr);
  }
  return out;
}

Symbol primitive_element(const Field& field) { return field.generator(); }

}  // namespace mds22
