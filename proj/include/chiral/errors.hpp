#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace chiral {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (words, presentation files). `position` is the
/// 0-based column of the offending character, `line` is 1-based (0 when the
/// input was a single string).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
      : Error(format(what, position, line)), position_(position), line_(line) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& what, std::size_t position,
                            std::size_t line) {
    std::string out = "parse error";
    if (line != 0) {
      out += " at line " + std::to_string(line) + ", column " + std::to_string(position + 1);
    } else {
      out += " at position " + std::to_string(position);
    }
    return out + ": " + what;
  }

  std::size_t position_;
  std::size_t line_;
};

/// A configured cap (cosets, enumerated elements, lattice size) was hit.
/// Never replaced by a partial answer.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::uint64_t limit, std::uint64_t reached = 0)
      : Error(what), limit_(limit), reached_(reached) {}

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t reached() const noexcept { return reached_; }

 private:
  std::uint64_t limit_;
  std::uint64_t reached_;
};

/// Two independent computations of the same quantity disagreed, or an
/// asserted mathematical invariant failed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Arguments violate a documented precondition (degree mismatch, rank
/// mismatch, unknown catalog name, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The marked generators do not satisfy the rotation relations
/// (s_i ... s_j)^2 = 1.
class RelationError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A face lattice failed the diamond condition.
class DiamondViolation : public Error {
 public:
  using Error::Error;
};

/// Computational caps shared by the whole library.
struct Limits {
  std::size_t max_cosets = 1'000'000;
  std::uint64_t max_enum = 1'000'000;
  std::uint64_t max_lattice = 10'000;

  /// Defaults overridden by MAX_COSETS, MAX_ENUM and MAX_LATTICE.
  static Limits from_env() {
    Limits lim;
    auto read = [](const char* name, auto& field) {
      if (const char* v = std::getenv(name); v != nullptr && *v != '\0') {
        char* end = nullptr;
        unsigned long long n = std::strtoull(v, &end, 10);
        if (end == nullptr || *end != '\0' || n == 0) {
          throw InvalidArgument(std::string(name) + " must be a positive integer");
        }
        field = static_cast<std::remove_reference_t<decltype(field)>>(n);
      }
    };
    read("MAX_COSETS", lim.max_cosets);
    read("MAX_ENUM", lim.max_enum);
    read("MAX_LATTICE", lim.max_lattice);
    return lim;
  }
};

}  // namespace chiral
