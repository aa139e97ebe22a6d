#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace searchgame {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Errors raised while ingesting or validating a game description.
class SpecError : public Error {
 public:
  explicit SpecError(const std::string& msg) : Error(msg) {}
};

class DimensionMismatch : public SpecError {
 public:
  explicit DimensionMismatch(const std::string& msg) : SpecError(msg) {}
};

class NegativeEntry : public SpecError {
 public:
  NegativeEntry(std::string where, double value)
      : SpecError("negative entry at " + where + ": " + std::to_string(value)),
        where(std::move(where)),
        value(value) {}
  std::string where;
  double value;
};

class RowSumNotOne : public SpecError {
 public:
  RowSumNotOne(int matrix, int row, double sum)
      : SpecError("matrix " + std::to_string(matrix) + " row " +
                  std::to_string(row) + " sums to " + std::to_string(sum)),
        matrix(matrix),
        row(row),
        sum(sum) {}
  int matrix;
  int row;
  double sum;
};

class BeliefSumNotOne : public SpecError {
 public:
  explicit BeliefSumNotOne(double sum)
      : SpecError("initial distribution sums to " + std::to_string(sum)),
        sum(sum) {}
  double sum;
};

class EmptySchedule : public SpecError {
 public:
  EmptySchedule() : SpecError("transition schedule is empty") {}
};

class LabelError : public SpecError {
 public:
  explicit LabelError(const std::string& msg) : SpecError(msg) {}
};

// Conditioning a belief on missing a state that holds (nearly) all the mass;
// the conditional distribution is undefined. Callers must resolve the find
// event before conditioning.
class ConditioningOnCertainty : public Error {
 public:
  explicit ConditioningOnCertainty(int state, double mass)
      : Error("cannot condition on a miss at state " + std::to_string(state) +
              " holding mass " + std::to_string(mass)),
        state(state),
        mass(mass) {}
  int state;
  double mass;
};

class NotIrreducible : public Error {
 public:
  NotIrreducible() : Error("transition matrix is not irreducible") {}
};

// The backward-induction tree exceeded the configured node budget.
class HorizonTooLarge : public Error {
 public:
  explicit HorizonTooLarge(std::uint64_t budget)
      : Error("solve exceeded the node budget of " + std::to_string(budget)),
        budget(budget) {}
  std::uint64_t budget;
};

class UnknownStrategy : public Error {
 public:
  explicit UnknownStrategy(const std::string& name)
      : Error("unknown strategy: " + name) {}
};

// A strategy was bound to a game it was not written for.
class SpecMismatch : public Error {
 public:
  explicit SpecMismatch(const std::string& msg) : Error(msg) {}
};

class ParameterOutOfRange : public Error {
 public:
  explicit ParameterOutOfRange(const std::string& msg) : Error(msg) {}
};

class UnsupportedDimension : public Error {
 public:
  explicit UnsupportedDimension(const std::string& msg) : Error(msg) {}
};

}  // namespace searchgame
