#pragma once

#include <stdexcept>
#include <string>

namespace prereq {

// Every failure names the pipeline stage that raised it ("hierarchy",
// "grades", "fuzzy", "decision", "simulator", "config", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace prereq
