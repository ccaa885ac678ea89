#include "mds22/constructions.hpp"

#include "mds22/error.hpp"

namespace mds22 {

namespace {

// [[a, b], [c, d]] with each entry a 2x1 column.
Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) { return block({{a, b}, {c, d}}); }

void require_k(std::size_t k) {
  if (k < 2) throw Error(Errc::bad_arity, "k must be at least 2");
}

CodeSpec gate(FieldPtr field, std::vector<Mat> h, std::vector<Mat> m, Construction c) {
  CodeSpec code(std::move(field), std::move(h), std::move(m), c);
  if (auto check = mds_check(code); !check) {
    throw Error(Errc::mds_check_failed, to_string(c) + " over " + code.field().describe() + ": [H_" +
                                            std::to_string(check.failing_pair->first) + " H_" +
                                            std::to_string(check.failing_pair->second) + "] is singular");
  }
  return code;
}

}  // namespace

std::size_t GroupPartition::group_of(std::size_t node) const {
  for (std::size_t z = 0; z < groups.size(); ++z)
    if (!groups[z].empty() && node >= groups[z].front() && node <= groups[z].back()) return z;
  throw Error(Errc::bad_argument, "node " + std::to_string(node) + " is in no group");
}

GroupPartition group_partition(std::size_t n, std::size_t g) {
  if (g < 1 || g > n) throw Error(Errc::bad_arity, "need 1 <= g <= n");
  GroupPartition out;
  std::size_t next = 1;
  for (std::size_t z = 0; z < g; ++z) {
    const std::size_t size = n / g + (z < n % g ? 1 : 0);
    std::vector<std::size_t> group(size);
    for (auto& v : group) v = next++;
    out.groups.push_back(std::move(group));
  }
  return out;
}

std::size_t min_field_order(Construction construction, std::size_t k) {
  const std::size_t n = k + 2;
  switch (construction) {
    case Construction::c1: return n + 3;
    case Construction::c2: return n + 1;
    case Construction::custom: break;
  }
  throw Error(Errc::bad_argument, "custom codes have no field-size rule");
}

FieldPtr default_field(Construction construction, std::size_t k) {
  require_k(k);
  // C1 needs n+3 distinct powers of alpha, i.e. q-1 >= n+3.
  const std::size_t need = construction == Construction::c1 ? k + 2 + 4 : min_field_order(construction, k);
  if (need <= 256) return Field::binary(8);
  for (std::size_t p = need; p <= Field::kMaxOrder; ++p)
    if (is_prime(p)) return Field::prime(static_cast<std::uint32_t>(p));
  throw Error(Errc::field_too_small, "no supported field for k = " + std::to_string(k));
}

CodeSpec build_c1(std::size_t k, FieldPtr field) {
  require_k(k);
  const std::size_t n = k + 2;
  if (field->order() < min_field_order(Construction::c1, k))
    throw Error(Errc::field_too_small, "C1 needs q >= n+3 = " + std::to_string(n + 3));
  const Field& f = *field;
  const Symbol alpha = primitive_element(f);

  std::vector<Mat> lam, neg_lam;
  for (std::size_t i = 0; i <= n + 2; ++i) {
    const Symbol l = f.pow(alpha, i);
    lam.push_back(Mat::lambda_vector(field, l));
    neg_lam.push_back(negate(lam.back()));
  }
  const Mat zero(field, 2, 1);
  const Symbol minus_one = f.neg(1);

  const auto groups = group_partition(n, kC1Groups);
  std::vector<Mat> h, m;
  for (std::size_t i = 1; i <= n; ++i) {
    switch (groups.group_of(i)) {
      case 0:
        h.push_back(block2(lam[i - 1], neg_lam[i], zero, lam[i]));
        m.push_back(Mat::from_rows(field, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
        break;
      case 1:
        h.push_back(block2(lam[i], zero, neg_lam[i], lam[i + 1]));
        m.push_back(Mat::from_rows(field, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
        break;
      case 2:
        h.push_back(block2(lam[i], zero, zero, lam[i + 2]));
        m.push_back(Mat::from_rows(field, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
        break;
      default:
        h.push_back(block2(lam[i + 2], zero, zero, lam[i + 2]));
        m.push_back(Mat::from_rows(field, {{minus_one, 0, alpha, 0}, {0, alpha, 0, minus_one}}));
        break;
    }
  }
  return gate(std::move(field), std::move(h), std::move(m), Construction::c1);
}

CodeSpec build_c2(std::size_t k, FieldPtr field) {
  require_k(k);
  const std::size_t n = k + 2;
  if (field->order() < min_field_order(Construction::c2, k))
    throw Error(Errc::field_too_small, "C2 needs q >= n+1 = " + std::to_string(n + 1));
  const std::size_t q = field->order();

  // H_n of the third group reaches lambda_{n+1}; the index is reduced mod q
  // like every other.
  std::vector<Mat> lam, neg_lam;
  for (std::size_t i = 0; i <= n + 1; ++i) {
    lam.push_back(Mat::lambda_vector(field, static_cast<Symbol>(i % q)));
    neg_lam.push_back(negate(lam.back()));
  }
  const Mat zero(field, 2, 1);

  const auto groups = group_partition(n, kC2Groups);
  std::vector<Mat> h, m;
  for (std::size_t i = 1; i <= n; ++i) {
    switch (groups.group_of(i)) {
      case 0:
        h.push_back(block2(lam[i - 1], neg_lam[i], zero, lam[i]));
        m.push_back(Mat::from_rows(field, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
        break;
      case 1:
        h.push_back(block2(lam[i], zero, neg_lam[i], lam[i - 1]));
        m.push_back(Mat::from_rows(field, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
        break;
      default:
        h.push_back(block2(lam[i], zero, zero, lam[i + 1]));
        m.push_back(Mat::from_rows(field, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
        break;
    }
  }
  return gate(std::move(field), std::move(h), std::move(m), Construction::c2);
}

CodeSpec build_code(Construction construction, std::size_t k, FieldPtr field) {
  switch (construction) {
    case Construction::c1: return build_c1(k, std::move(field));
    case Construction::c2: return build_c2(k, std::move(field));
    case Construction::custom: break;
  }
  throw Error(Errc::bad_argument, "custom codes cannot be built from (k, field)");
}

CodeSpec random_mds_code(std::size_t k, FieldPtr field, std::mt19937_64& rng, unsigned max_attempts) {
  if (k < 1) throw Error(Errc::bad_arity, "k must be at least 1");
  const std::size_t n = k + 2;
  std::uniform_int_distribution<Symbol> symbol(0, field->order() - 1);
  auto draw = [&] {
    std::vector<Symbol> e(8);
    for (auto& v : e) v = symbol(rng);
    return Mat(field, 4, 2, std::move(e));
  };

  constexpr int kDrawsPerBlock = 64;
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Mat> h;
    while (h.size() < n) {
      bool placed = false;
      for (int t = 0; t < kDrawsPerBlock && !placed; ++t) {
        Mat cand = draw();
        if (rank(cand) < 2) continue;
        bool ok = true;
        for (const auto& prev : h) {
          if (rank(hstack(prev, cand)) < 4) {
            ok = false;
            break;
          }
        }
        if (ok) {
          h.push_back(std::move(cand));
          placed = true;
        }
      }
      if (!placed) break;
    }
    if (h.size() < n) continue;
    CodeSpec code(field, std::move(h));
    if (mds_check(code)) return code;
  }
  throw Error(Errc::not_found, "no MDS code found for k = " + std::to_string(k) + " over " + field->describe());
}

std::vector<std::vector<std::size_t>> designed_pattern(const CodeSpec& code) {
  const bool by_rank = code.construction() == Construction::c1;
  if (!by_rank && code.construction() != Construction::c2)
    throw Error(Errc::bad_argument, "pattern tables exist only for C1 and C2");
  const std::size_t n = code.n();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const Mat mh = code.designed_repair(i) * code.h(j);
      table[i - 1][j - 1] = by_rank ? rank(mh) : nonzero_columns(mh);
    }
  return table;
}

PatternCheck check_designed_pattern(const CodeSpec& code) {
  const auto table = designed_pattern(code);
  const auto groups =
      group_partition(code.n(), code.construction() == Construction::c1 ? kC1Groups : kC2Groups);
  PatternCheck check;
  for (std::size_t i = 1; i <= code.n() && check.ok; ++i)
    for (std::size_t j = 1; j <= code.n(); ++j) {
      const std::size_t want = groups.group_of(i) == groups.group_of(j) ? 2 : 1;
      if (table[i - 1][j - 1] != want) {
        check.ok = false;
        check.first_mismatch = {i, j};
        break;
      }
    }
  return check;
}

}  // namespace mds22
