#pragma once

#include <stdexcept>
#include <string>

namespace cdoc {

// Error families map 1:1 onto CLI exit codes, see tools/main.cpp.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files, bad config values, out-of-schema data.
struct ParseError : Error {
  using Error::Error;
};

// Referential-integrity violations in the store.
struct IntegrityError : Error {
  using Error::Error;
};

// Out-of-bounds vectors, bands outside the response grid.
struct DomainError : Error {
  using Error::Error;
};

// Generator client failures (transport, exhausted transcript).
struct GeneratorError : Error {
  using Error::Error;
};

// Graph construction ambiguities and empty detections.
struct TopologyError : Error {
  using Error::Error;
};

// Synthetic renderer cannot embed the requested netlist.
struct RenderError : Error {
  using Error::Error;
};

struct NotFoundError : Error {
  using Error::Error;
};

}  // namespace cdoc
