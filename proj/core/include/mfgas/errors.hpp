#pragma once

#include <stdexcept>
#include <string>

namespace mfgas {

struct DimensionError : std::invalid_argument {
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Gradient or Hessian requested where the formula blows up.
struct SingularPointError : std::domain_error {
  explicit SingularPointError(const std::string& what) : std::domain_error(what) {}
};

struct ConfigurationError : std::runtime_error {
  explicit ConfigurationError(const std::string& what) : std::runtime_error(what) {}
};

// A measure known to be a tail-truncation carries too much mass at the
// boundary for the requested operation to be trustworthy.
struct TruncationDomainError : std::runtime_error {
  explicit TruncationDomainError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainTooSmallError : std::runtime_error {
  explicit DomainTooSmallError(const std::string& what) : std::runtime_error(what) {}
};

struct FrameConditionError : std::runtime_error {
  explicit FrameConditionError(const std::string& what) : std::runtime_error(what) {}
};

struct EigensolveError : std::runtime_error {
  explicit EigensolveError(const std::string& what) : std::runtime_error(what) {}
};

// Carries the stage name so orchestration failures point at the culprit.
struct PipelineStageError : std::runtime_error {
  PipelineStageError(const std::string& stage, const std::string& what)
      : std::runtime_error("stage '" + stage + "': " + what), stage_name(stage) {}
  std::string stage_name;
};

}
