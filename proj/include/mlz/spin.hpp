#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace mlz {

// A multiple of 1/2, stored as twice its value so arithmetic stays exact.
class HalfInteger {
public:
    constexpr HalfInteger() = default;

    static constexpr HalfInteger from_twice(int twice) noexcept { return HalfInteger(twice); }

    // Accepts "3/2", "-1/2", "1", "1.5", "+2". Throws Error(Errc::invalid_spin) otherwise.
    static HalfInteger parse(std::string_view text);

    // Throws Error(Errc::invalid_spin) unless value is an exact multiple of 1/2.
    static HalfInteger from_double(double value);

    constexpr int twice() const noexcept { return twice_; }
    constexpr double value() const noexcept { return 0.5 * twice_; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

    constexpr HalfInteger operator-() const noexcept { return HalfInteger(-twice_); }

    // "3/2", "-1/2", "1"; with_sign prefixes '+' on positive values.
    std::string str(bool with_sign = false) const;

    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

private:
    constexpr explicit HalfInteger(int twice) : twice_(twice) {}

    int twice_{0};
};

inline constexpr int max_twice_spin = 100;

// Validates a spin quantum number: 1/2 <= j <= 50.
void require_spin(HalfInteger j);

// Dimension 2j+1 of the spin-j representation.
int spin_dimension(HalfInteger j);

// Row index of |m> in the descending basis m = +j, ..., -j. Throws Errc::invalid_level.
int level_index(HalfInteger j, HalfInteger m);

// Inverse of level_index.
HalfInteger level_at(HalfInteger j, int index);

}  // namespace mlz
