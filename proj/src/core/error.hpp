#pragma once

#include <stdexcept>
#include <string>

namespace hmmforge {

enum class ErrorCode {
  InvalidArgument,
  Io,
  RankDeficiency,
  Numeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hmmforge
