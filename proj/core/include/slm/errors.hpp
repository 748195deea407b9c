#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slm {

// Parse failure in a sigma/payoff spec string; carries the offending position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A model was evaluated outside its admissible domain: sigma vanishing where it
// must be positive, non-finite values, integrands blowing up inside a range.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The PDE march produced a non-finite value; message carries the step diagnostic.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace slm
