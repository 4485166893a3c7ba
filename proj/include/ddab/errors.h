// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef DDAB_ERRORS_H_
#define DDAB_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace ddab {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain caller input.
class InputError : public Error {
 public:
  using Error::Error;
};

// The graph/path pair violates a structural assumption (e.g. the path is
// not a shortest S-T path). `witness` holds node names of a violating path
// when one exists.
class EnvironmentError : public Error {
 public:
  EnvironmentError(const std::string& what, std::vector<std::string> witness = {})
      : Error(what), witness_(std::move(witness)) {}
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

class IllegalMoveError : public Error {
 public:
  using Error::Error;
};

// Action submitted out of turn, or a strategy/peer broke the game protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A proven invariant failed. Always a bug, never a game outcome.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Replay diverged from the recorded trace.
class CorruptionError : public Error {
 public:
  CorruptionError(const std::string& what, int record_index)
      : Error(what), record_index_(record_index) {}
  int record_index() const { return record_index_; }

 private:
  int record_index_;
};

// Exhaustive search gave up before closing the state space.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, long long explored)
      : Error(what), explored_(explored) {}
  long long explored() const { return explored_; }

 private:
  long long explored_;
};

}  // namespace ddab

#endif  // DDAB_ERRORS_H_
