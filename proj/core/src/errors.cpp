#include "trotter/errors.hpp"

namespace trotter {

UnsupportedDerivative::UnsupportedDerivative(int requested, int available)
    : Error("derivative of order " + std::to_string(requested) +
            " requested, control is only C^" + std::to_string(available)),
      requested_(requested), available_(available) {}

AccuracyError::AccuracyError(const std::string& what, double achieved)
    : Error(what), achieved_(achieved) {}

} // namespace trotter
