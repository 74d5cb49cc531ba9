#pragma once

#include <stdexcept>
#include <string>

namespace plf {

// Error taxonomy shared by the library and the CLI exit-code contract.
enum class ErrorKind {
  ParseError,      // malformed input file (carries a line number)
  InvalidSurface,  // non-manifold edge, orientation mismatch, disconnected complex
  InvalidConfig,   // bad parameters (family config, solver options)
  InvalidMetric,   // triangle inequality violated (carries a face id)
  Degenerate,      // zero-area triangle met during scaling / flipping
  NotDelaunay,     // contract violation: op requires a Delaunay input
  NonConvergence,  // iteration limit or line-search failure
  Divergence,      // |u| exceeded the divergence guard
  FlipLimit,       // flip termination guard exceeded
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what, int line = -1, int face = -1)
      : std::runtime_error(what), kind_(kind), line_(line), face_(face) {}

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }   // -1 when not applicable
  int face() const { return face_; }   // -1 when not applicable

private:
  ErrorKind kind_;
  int line_;
  int face_;
};

} // namespace plf
