#pragma once

#include <cstdint>
#include <stdexcept>

namespace biasedwalk {

using NodeId = std::int32_t;

// Input data that could not be parsed (edge lists, label files, embeddings).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed input with an out-of-contract value (bad flag, impossible request).
struct ParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace biasedwalk
