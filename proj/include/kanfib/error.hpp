#pragma once

#include <stdexcept>
#include <string>

namespace kanfib {

enum class Errc {
  validation_error,       // malformed input tables / shape mismatch
  identity_violation,     // simplicial identity fails in supplied tables
  truncation_mismatch,    // operands materialized to different depths
  depth_exceeds_truncation,
  no_filler,
  non_unique_filler,
  not_a_1_groupoid,
  not_a_2_groupoid,
  not_group_like,
  not_a_crossed_module,
  not_a_transformation,
  coherence_failure,
  not_a_strict_action,
  not_a_fibration,
  not_a_hypercover,
  base_vertex_map_not_bijective,
  base_not_a_1_group,
  action_not_free,
  well_definedness_failure,
  not_2_isotropy_free,
  parse_error,
  internal_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace kanfib
