#pragma once

#include <stdexcept>
#include <string>

namespace mds22 {

enum class Errc {
  // gf
  not_prime,
  reducible_modulus,
  no_generator_found,
  division_by_zero,
  // linalg
  dimension_mismatch,
  field_mismatch,
  singular,
  not_square,
  // code
  singular_parity_pair,
  has_erasures,
  too_many_erasures,
  // constructions
  bad_arity,
  field_too_small,
  mds_check_failed,
  // repair
  not_a_repair_matrix,
  bad_helper_index,
  missing_payload,
  zero_matrix,
  // oracle
  field_too_large,
  not_mds,
  not_found,
  // store
  io_error,
  too_few_shards,
  header_mismatch,
  missing_helper,
  // generic argument validation
  bad_argument,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mds22
