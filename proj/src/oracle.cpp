#include "mds22/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

#include "mds22/error.hpp"

namespace mds22 {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_oracle_field(const Field& f) {
  if (f.order() > kOracleMaxOrder)
    throw Error(Errc::field_too_large, f.describe() + " exceeds the exhaustive-search limit q <= 16");
}

struct Cost {
  std::uint8_t rank;
  std::uint8_t nz;
};

// rank and nonzero-column count of M H for 2x4 M and 4x2 H.
Cost cost_of(const Field& f, const Mat& m, const Mat& h) {
  Symbol p[2][2] = {};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t t = 0; t < 4; ++t) {
      const Symbol a = m(r, t);
      if (a == 0) continue;
      p[r][0] = f.add(p[r][0], f.mul(a, h(t, 0)));
      p[r][1] = f.add(p[r][1], f.mul(a, h(t, 1)));
    }
  const std::uint8_t nz = static_cast<std::uint8_t>((p[0][0] || p[1][0]) + (p[0][1] || p[1][1]));
  if (nz == 0) return {0, 0};
  const bool singular = f.mul(p[0][0], p[1][1]) == f.mul(p[0][1], p[1][0]);
  return {static_cast<std::uint8_t>(singular ? 1 : 2), nz};
}

struct Best {
  std::size_t value = kNone;
  std::size_t index = kNone;

  void offer(std::size_t v, std::size_t idx) {
    if (v < value || (v == value && idx < index)) {
      value = v;
      index = idx;
    }
  }
  void merge(const Best& o) {
    if (o.index != kNone) offer(o.value, o.index);
  }
};

struct NodeBest {
  Best beta, gamma, relaxed;
};

}  // namespace

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(Errc::division_by_zero, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

std::int64_t Rational::ceil() const {
  if (num >= 0) return (num + den - 1) / den;
  return -((-num) / den);
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("MDS22_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<Mat> enumerate_row_spaces(const FieldPtr& field) {
  require_oracle_field(*field);
  const std::uint32_t q = field->order();
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(q * q + 1) * (q * q + q + 1));
  for (std::size_t p0 = 0; p0 < 4; ++p0) {
    for (std::size_t p1 = p0 + 1; p1 < 4; ++p1) {
      // Free slots: row 0 right of p0 except p1, row 1 right of p1.
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t c = p0 + 1; c < 4; ++c)
        if (c != p1) free.emplace_back(0, c);
      for (std::size_t c = p1 + 1; c < 4; ++c) free.emplace_back(1, c);

      std::vector<Symbol> digits(free.size(), 0);
      while (true) {
        Mat m(field, 2, 4);
        m(0, p0) = 1;
        m(1, p1) = 1;
        for (std::size_t t = 0; t < free.size(); ++t) m(free[t].first, free[t].second) = digits[t];
        out.push_back(std::move(m));

        std::size_t t = free.size();
        while (t > 0 && ++digits[t - 1] == q) digits[--t] = 0;
        if (t == 0) break;
      }
    }
  }
  return out;
}

std::vector<NodeOptimum> node_optima(const CodeSpec& code, unsigned threads) {
  require_oracle_field(code.field());
  if (!mds_check(code)) throw Error(Errc::not_mds, "exhaustive optima need an MDS code");
  const auto reps = enumerate_row_spaces(code.field_ptr());
  const std::size_t n = code.n();
  const Field& f = code.field();

  auto scan = [&](std::size_t begin, std::size_t end, std::vector<NodeBest>& best) {
    std::vector<Cost> costs(n);
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t total_rank = 0, total_nz = 0;
      for (std::size_t j = 0; j < n; ++j) {
        costs[j] = cost_of(f, reps[idx], code.h_blocks()[j]);
        total_rank += costs[j].rank;
        total_nz += costs[j].nz;
      }
      const std::size_t bw = total_rank - 2;
      const std::size_t io = total_nz - 2;
      for (std::size_t i = 0; i < n; ++i) {
        if (costs[i].rank == 2) {
          best[i].beta.offer(bw, idx);
          best[i].gamma.offer(io, idx);
        }
        if (costs[i].nz == 2) best[i].relaxed.offer(io, idx);
      }
    }
  };

  if (threads == 0) threads = default_worker_count();
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, reps.size() / 512)));
  std::vector<std::vector<NodeBest>> partial(threads, std::vector<NodeBest>(n));
  if (threads == 1) {
    scan(0, reps.size(), partial[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (reps.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t b = std::min(reps.size(), w * chunk);
      const std::size_t e = std::min(reps.size(), b + chunk);
      pool.emplace_back(scan, b, e, std::ref(partial[w]));
    }
    for (auto& t : pool) t.join();
  }

  std::vector<NodeOptimum> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeBest best;
    for (const auto& p : partial) {
      best.beta.merge(p[i].beta);
      best.gamma.merge(p[i].gamma);
      best.relaxed.merge(p[i].relaxed);
    }
    if (best.beta.index == kNone)
      throw Error(Errc::not_found, "no repair matrix for node " + std::to_string(i + 1));
    NodeOptimum opt{i + 1,
                    best.beta.value,
                    best.gamma.value,
                    best.relaxed.value,
                    reps[best.beta.index],
                    reps[best.gamma.index],
                    {}};
    for (std::size_t j = 0; j < n; ++j)
      if (cost_of(f, opt.witness_bw, code.h_blocks()[j]).rank == 2) opt.witness_bw_repairable.push_back(j + 1);
    out.push_back(std::move(opt));
  }
  return out;
}

BoundsReport bounds_report(const CodeSpec& code, unsigned threads) {
  BoundsReport r;
  r.k = code.k();
  r.q = code.field().order();
  r.field = code.field().describe();
  r.construction = code.construction();
  r.per_node = node_optima(code, threads);

  const auto n = static_cast<std::int64_t>(code.n());
  const auto k = static_cast<std::int64_t>(code.k());
  std::int64_t sum_beta = 0, sum_gamma = 0;
  for (const auto& o : r.per_node) {
    sum_beta += static_cast<std::int64_t>(o.beta);
    sum_gamma += static_cast<std::int64_t>(o.gamma);
    r.max_beta = std::max(r.max_beta, o.beta);
    r.max_gamma = std::max(r.max_gamma, o.gamma);
  }
  r.avg_beta = Rational::of(sum_beta, n);
  r.avg_gamma = Rational::of(sum_gamma, n);
  r.bound_avg_beta = Rational::of(5 * k, 4);
  r.bound_max_beta = static_cast<std::size_t>(r.bound_avg_beta.ceil());
  r.bound_avg_gamma = Rational::of(4 * k + 1, 3);
  r.bound_max_gamma = static_cast<std::size_t>(r.bound_avg_gamma.ceil());

  r.avg_beta_ok = r.avg_beta >= r.bound_avg_beta;
  r.max_beta_ok = r.max_beta >= r.bound_max_beta;
  r.avg_gamma_ok = r.avg_gamma >= r.bound_avg_gamma;
  r.max_gamma_ok = r.max_gamma >= r.bound_max_gamma;
  return r;
}

nlohmann::json to_json(const BoundsReport& r) {
  auto rational = [](const Rational& v) { return nlohmann::json{{"num", v.num}, {"den", v.den}}; };
  nlohmann::json per_node = nlohmann::json::array();
  for (const auto& o : r.per_node)
    per_node.push_back({{"node", o.node}, {"beta", o.beta}, {"gamma", o.gamma}, {"gamma_relaxed", o.gamma_relaxed}});
  return {
      {"k", r.k},
      {"q", r.q},
      {"field", r.field},
      {"construction", to_string(r.construction)},
      {"per_node", per_node},
      {"avg_beta", rational(r.avg_beta)},
      {"max_beta", r.max_beta},
      {"avg_gamma", rational(r.avg_gamma)},
      {"max_gamma", r.max_gamma},
      {"bounds",
       {{"avg_beta", rational(r.bound_avg_beta)},
        {"max_beta", r.bound_max_beta},
        {"avg_gamma", rational(r.bound_avg_gamma)},
        {"max_gamma", r.bound_max_gamma}}},
      {"satisfied",
       {{"avg_beta", r.avg_beta_ok},
        {"max_beta", r.max_beta_ok},
        {"avg_gamma", r.avg_gamma_ok},
        {"max_gamma", r.max_gamma_ok}}},
  };
}

bool subset_less(std::span<const std::size_t> s, std::span<const std::size_t> t) {
  if (s.size() != t.size()) return s.size() < t.size();
  std::vector<std::size_t> a(s.begin(), s.end()), b(t.begin(), t.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Mat full_degree_witness(const CodeSpec& code, std::size_t node) {
  require_oracle_field(code.field());
  if (node < 1 || node > code.n()) throw Error(Errc::bad_argument, "node index out of range");
  if (!mds_check(code)) throw Error(Errc::not_mds, "witness search needs an MDS code");
  const Field& f = code.field();
  const std::size_t n = code.n();
  for (const auto& m : enumerate_row_spaces(code.field_ptr())) {
    if (cost_of(f, m, code.h(node)).rank != 2) continue;
    std::size_t touched = 0, total_nz = 0;
    for (const auto& h : code.h_blocks()) {
      const auto c = cost_of(f, m, h);
      touched += c.nz != 0;
      total_nz += c.nz;
    }
    if (touched == n && total_nz - 2 <= 2 * code.k()) return m;
  }
  throw Error(Errc::not_found, "no degree-(k+1) repair matrix with IO <= 2k for node " + std::to_string(node));
}

}  // namespace mds22
