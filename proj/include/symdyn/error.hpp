#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symdyn {

enum class ErrorCode {
  InvalidMatrix,
  InvalidGraph,
  NotASource,
  WouldEmpty,
  BadPartition,
  NotAFactorization,
  InvalidWitness,
  ShapeError,
  NotIrreducible,
  NotIrreducibleNontrivial,
  HasSinks,
  UnknownGenerator,
  SinkVertex,
  Parse,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symdyn
