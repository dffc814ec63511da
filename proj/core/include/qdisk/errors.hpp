#ifndef QDISK_ERRORS_HPP
#define QDISK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdisk {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Window arithmetic would need entries outside the truncation; the library
// refuses instead of silently dropping them.
struct SupportOverflow : Error {
  explicit SupportOverflow(const std::string& msg) : Error(msg) {}
};

struct IndexOutOfWindow : Error {
  explicit IndexOutOfWindow(const std::string& msg) : Error(msg) {}
};

struct NearZeroSymbol : Error {
  explicit NearZeroSymbol(const std::string& msg) : Error(msg) {}
};

struct CompatibilityViolation : Error {
  explicit CompatibilityViolation(const std::string& msg) : Error(msg) {}
};

struct GrowthViolation : Error {
  explicit GrowthViolation(const std::string& msg) : Error(msg) {}
};

struct Singular : Error {
  explicit Singular(const std::string& msg) : Error(msg) {}
};

struct NotSelfAdjoint : Error {
  explicit NotSelfAdjoint(const std::string& msg) : Error(msg) {}
};

struct BadExtension : Error {
  explicit BadExtension(const std::string& msg) : Error(msg) {}
};

struct ContourTooTight : Error {
  explicit ContourTooTight(const std::string& msg) : Error(msg) {}
};

struct IllConditioned : Error {
  explicit IllConditioned(const std::string& msg) : Error(msg) {}
};

struct SpecViolation : Error {
  explicit SpecViolation(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace qdisk

#endif
