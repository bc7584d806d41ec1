#pragma once

#include <stdexcept>
#include <string>

namespace homewalk {

// Resource limit hit (DP window over the memory cap, table cap exceeded).
class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An instruction stream ran dry before the step budget, with no hit.
class StreamExhausted : public std::runtime_error {
  public:
    explicit StreamExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homewalk
