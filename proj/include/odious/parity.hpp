#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace odious {

/// Binary digit-sum parity of a nonnegative integer (Thue-Morse value).
enum class ParityClass : std::uint8_t { Evil = 0, Odious = 1 };

constexpr ParityClass opposite(ParityClass p) noexcept {
  return p == ParityClass::Evil ? ParityClass::Odious : ParityClass::Evil;
}

constexpr std::string_view to_string(ParityClass p) noexcept {
  return p == ParityClass::Odious ? "odious" : "evil";
}

/// Residue of an integer modulo 3.
class Residue3 {
 public:
  constexpr Residue3() = default;
  constexpr explicit Residue3(unsigned value) : value_(value) {
    if (value > 2) throw std::out_of_range("Residue3 value must be 0, 1 or 2");
  }
  constexpr unsigned value() const noexcept { return value_; }
  constexpr friend bool operator==(Residue3, Residue3) = default;

 private:
  unsigned value_ = 0;
};

/// ln 3 / ln 4, the growth exponent of the evil excess on multiples of 3.
inline constexpr double kAlpha = 0.79248125036057809;

inline double alpha() noexcept { return std::log(3.0) / std::log(4.0); }

namespace detail {

// Kernighan-style loop; independent of the hardware popcount path.
constexpr unsigned popcount_portable(std::uint64_t m) noexcept {
  unsigned count = 0;
  while (m != 0) {
    m &= m - 1;
    ++count;
  }
  return count;
}

constexpr unsigned popcount_hw(std::uint64_t m) noexcept {
  return static_cast<unsigned>(std::popcount(m));
}

}  // namespace detail

constexpr ParityClass parity(std::uint64_t m) noexcept {
  return (detail::popcount_hw(m) & 1U) != 0 ? ParityClass::Odious
                                            : ParityClass::Evil;
}

constexpr ParityClass parity_portable(std::uint64_t m) noexcept {
  return (detail::popcount_portable(m) & 1U) != 0 ? ParityClass::Odious
                                                  : ParityClass::Evil;
}

constexpr bool is_odious(std::uint64_t m) noexcept {
  return parity(m) == ParityClass::Odious;
}

constexpr Residue3 residue3(std::uint64_t m) noexcept {
  return Residue3(static_cast<unsigned>(m % 3));
}

constexpr int parity_index(ParityClass p) noexcept { return static_cast<int>(p); }

}  // namespace odious
