#include "mlz/spin.hpp"

#include "mlz/errors.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>

namespace mlz {

namespace {

bool parse_int(std::string_view s, int& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

HalfInteger HalfInteger::parse(std::string_view text) {
    const auto bad = [&] {
        return Error(Errc::invalid_spin, fmt::format("'{}' is not a multiple of 1/2", text));
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        int num = 0;
        int den = 0;
        if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den)) throw bad();
        if (den == 1) return HalfInteger(2 * num);
        if (den == 2) return HalfInteger(num);
        throw bad();
    }
    std::string_view s = text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) throw bad();
    return from_double(value);
}

HalfInteger HalfInteger::from_double(double value) {
    const double twice = 2.0 * value;
    if (!std::isfinite(twice) || twice != std::round(twice) || std::abs(twice) > 1e6) {
        throw Error(Errc::invalid_spin, fmt::format("{} is not a multiple of 1/2", value));
    }
    return HalfInteger(static_cast<int>(twice));
}

std::string HalfInteger::str(bool with_sign) const {
    const char* sign = (with_sign && twice_ > 0) ? "+" : "";
    if (is_integer()) return fmt::format("{}{}", sign, twice_ / 2);
    return fmt::format("{}{}/2", sign, twice_);
}

void require_spin(HalfInteger j) {
    if (j.twice() < 1) {
        throw Error(Errc::invalid_spin, fmt::format("spin j = {} must be at least 1/2", j.str()));
    }
    if (j.twice() > max_twice_spin) {
        throw Error(Errc::spin_too_large, fmt::format("spin j = {} exceeds the supported maximum 50", j.str()));
    }
}

int spin_dimension(HalfInteger j) {
    require_spin(j);
    return j.twice() + 1;
}

int level_index(HalfInteger j, HalfInteger m) {
    require_spin(j);
    const int diff = j.twice() - m.twice();
    if (diff < 0 || diff > 2 * j.twice() || diff % 2 != 0) {
        throw Error(Errc::invalid_level, fmt::format("m = {} is not a level of spin j = {}", m.str(), j.str()));
    }
    return diff / 2;
}

HalfInteger level_at(HalfInteger j, int index) {
    require_spin(j);
    if (index < 0 || index > j.twice()) {
        throw Error(Errc::invalid_level, fmt::format("level index {} out of range for j = {}", index, j.str()));
    }
    return HalfInteger::from_twice(j.twice() - 2 * index);
}

}  // namespace mlz
