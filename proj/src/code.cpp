#include "mds22/code.hpp"

#include <algorithm>

#include "mds22/error.hpp"

namespace mds22 {

std::string to_string(Construction c) {
  switch (c) {
    case Construction::c1: return "c1";
    case Construction::c2: return "c2";
    case Construction::custom: return "custom";
  }
  return "custom";
}

Construction parse_construction(std::string_view name) {
  if (name == "c1" || name == "C1") return Construction::c1;
  if (name == "c2" || name == "C2") return Construction::c2;
  if (name == "custom") return Construction::custom;
  throw Error(Errc::bad_argument, "unknown construction '" + std::string(name) + "'");
}

CodeSpec::CodeSpec(FieldPtr field, std::vector<Mat> h_blocks, std::optional<std::vector<Mat>> designed_repair,
                   Construction construction)
    : field_(std::move(field)),
      h_blocks_(std::move(h_blocks)),
      designed_(std::move(designed_repair)),
      construction_(construction) {
  if (!field_) throw Error(Errc::bad_argument, "code without a field");
  if (h_blocks_.size() < 3) throw Error(Errc::bad_arity, "an (k+2, k, 2) code needs k >= 1");
  for (const auto& h : h_blocks_) {
    if (h.rows() != 4 || h.cols() != 2) throw Error(Errc::dimension_mismatch, "parity-check blocks must be 4x2");
    if (!h.field().same_as(*field_)) throw Error(Errc::field_mismatch, "parity-check block over another field");
  }
  if (designed_) {
    if (designed_->size() != h_blocks_.size())
      throw Error(Errc::bad_arity, "need one designed repair matrix per node");
    for (std::size_t i = 0; i < designed_->size(); ++i) {
      const Mat& m = (*designed_)[i];
      if (m.rows() != 2 || m.cols() != 4) throw Error(Errc::dimension_mismatch, "repair matrices must be 2x4");
      if (!m.field().same_as(*field_)) throw Error(Errc::field_mismatch, "repair matrix over another field");
      if (rank(m * h_blocks_[i]) != 2)
        throw Error(Errc::not_a_repair_matrix, "designed M_" + std::to_string(i + 1) + " cannot repair its node");
    }
  }
}

const Mat& CodeSpec::h(std::size_t node) const {
  if (node < 1 || node > n()) throw Error(Errc::bad_argument, "node index out of range");
  return h_blocks_[node - 1];
}

const Mat& CodeSpec::designed_repair(std::size_t node) const {
  if (!designed_) throw Error(Errc::not_found, "code carries no designed repair matrices");
  if (node < 1 || node > n()) throw Error(Errc::bad_argument, "node index out of range");
  return (*designed_)[node - 1];
}

MdsCheck mds_check(const CodeSpec& code) {
  for (std::size_t i = 1; i <= code.n(); ++i)
    for (std::size_t j = i + 1; j <= code.n(); ++j)
      if (rank(hstack(code.h(i), code.h(j))) < 4) return {false, std::make_pair(i, j)};
  return {};
}

ErasureDecoder::ErasureDecoder(const CodeSpec& code, std::vector<std::size_t> erased)
    : field_(code.field_ptr()), erased_(std::move(erased)), coeffs_(code.field_ptr(), 0, 0) {
  std::sort(erased_.begin(), erased_.end());
  erased_.erase(std::unique(erased_.begin(), erased_.end()), erased_.end());
  if (erased_.size() > 2) throw Error(Errc::too_many_erasures, "at most two nodes can be decoded");
  for (auto e : erased_)
    if (e < 1 || e > code.n()) throw Error(Errc::bad_argument, "erased index out of range");
  for (std::size_t j = 1; j <= code.n(); ++j)
    if (!std::binary_search(erased_.begin(), erased_.end(), j)) survivors_.push_back(j);
  if (erased_.empty()) return;

  // Pick the equations to solve: the full 4x4 system for two erasures, or
  // the first pair of rows of H_i forming an invertible 2x2 block for one.
  std::vector<std::size_t> rows = {0, 1, 2, 3};
  Mat lhs(field_, 0, 0);
  if (erased_.size() == 2) {
    lhs = hstack(code.h(erased_[0]), code.h(erased_[1]));
  } else {
    const Mat& hi = code.h(erased_[0]);
    bool found = false;
    for (std::size_t a = 0; a < 4 && !found; ++a) {
      for (std::size_t b = a + 1; b < 4 && !found; ++b) {
        const std::size_t pick[] = {a, b};
        Mat sub = hi.select_rows(pick);
        if (rank(sub) == 2) {
          rows = {a, b};
          lhs = std::move(sub);
          found = true;
        }
      }
    }
    if (!found) throw Error(Errc::singular_parity_pair, "H_" + std::to_string(erased_[0]) + " has rank < 2");
  }

  Mat lhs_inv(field_, 0, 0);
  try {
    lhs_inv = inverse(lhs);
  } catch (const Error& e) {
    if (e.code() != Errc::singular) throw;
    throw Error(Errc::singular_parity_pair, "erased parity-check blocks are not invertible");
  }

  std::vector<Mat> parts;
  parts.reserve(survivors_.size());
  for (auto j : survivors_) parts.push_back(negate(lhs_inv * code.h(j).select_rows(rows)));
  coeffs_ = parts.empty() ? Mat(field_, 2 * erased_.size(), 0) : hstack(parts);
}

void ErasureDecoder::apply(std::span<const Symbol> in, std::span<Symbol> out) const {
  if (in.size() != coeffs_.cols() || out.size() != coeffs_.rows())
    throw Error(Errc::dimension_mismatch, "decoder input/output length");
  const Field& f = *field_;
  for (std::size_t r = 0; r < coeffs_.rows(); ++r) {
    Symbol acc = 0;
    for (std::size_t c = 0; c < coeffs_.cols(); ++c) acc = f.add(acc, f.mul(coeffs_(r, c), in[c]));
    out[r] = acc;
  }
}

Stripe encode(const CodeSpec& code, std::span<const Symbol> data) {
  const std::size_t k = code.k();
  if (data.size() != 2 * k)
    throw Error(Errc::bad_argument, "data length " + std::to_string(data.size()) + " != 2k");
  for (Symbol s : data)
    if (!code.field().contains(s)) throw Error(Errc::bad_argument, "data symbol outside the field");
  const ErasureDecoder parity(code, {k + 1, k + 2});
  Stripe stripe;
  stripe.columns.reserve(code.n());
  for (std::size_t i = 0; i < k; ++i)
    stripe.columns.emplace_back(code.field_ptr(), 2, 1, std::vector<Symbol>{data[2 * i], data[2 * i + 1]});
  std::vector<Symbol> out(4);
  parity.apply(data, out);
  stripe.columns.emplace_back(code.field_ptr(), 2, 1, std::vector<Symbol>{out[0], out[1]});
  stripe.columns.emplace_back(code.field_ptr(), 2, 1, std::vector<Symbol>{out[2], out[3]});
  return stripe;
}

bool verify_stripe(const CodeSpec& code, const Stripe& stripe) {
  if (!stripe.erased.empty()) throw Error(Errc::has_erasures, "cannot verify a stripe with erasures");
  if (stripe.columns.size() != code.n()) throw Error(Errc::dimension_mismatch, "stripe width differs from n");
  Mat syndrome(code.field_ptr(), 4, 1);
  for (std::size_t i = 1; i <= code.n(); ++i) syndrome = syndrome + code.h(i) * stripe.column(i);
  return syndrome.is_zero();
}

Stripe decode_erasures(const CodeSpec& code, Stripe stripe) {
  if (stripe.columns.size() != code.n()) throw Error(Errc::dimension_mismatch, "stripe width differs from n");
  if (stripe.erased.size() > 2) throw Error(Errc::too_many_erasures, "more than two erased nodes");
  if (stripe.erased.empty()) return stripe;
  const ErasureDecoder decoder(code, {stripe.erased.begin(), stripe.erased.end()});
  std::vector<Symbol> in;
  in.reserve(2 * decoder.survivors().size());
  for (auto j : decoder.survivors()) {
    const Mat& c = stripe.column(j);
    in.push_back(c(0, 0));
    in.push_back(c(1, 0));
  }
  std::vector<Symbol> out(2 * decoder.erased().size());
  decoder.apply(in, out);
  for (std::size_t e = 0; e < decoder.erased().size(); ++e)
    stripe.columns[decoder.erased()[e] - 1] =
        Mat(code.field_ptr(), 2, 1, std::vector<Symbol>{out[2 * e], out[2 * e + 1]});
  stripe.erased.clear();
  return stripe;
}

}  // namespace mds22
