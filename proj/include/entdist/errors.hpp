#ifndef ENTDIST_ERRORS_HPP
#define ENTDIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace entdist {

// A quantity that must be strictly positive for the requested figure of merit
// (a trace, a herald probability, a fidelity denominator) vanished: the
// result is undefined, not zero and not NaN.
class degenerate_error : public std::runtime_error {
 public:
  explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed, inconsistent, or unknown-key run configuration.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entdist

#endif  // ENTDIST_ERRORS_HPP
