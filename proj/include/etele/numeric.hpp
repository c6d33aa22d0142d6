// Copyright 2026 The etele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ETELE_NUMERIC_HPP
#define ETELE_NUMERIC_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

namespace etele {

inline constexpr double kPi = std::numbers::pi;

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, end);
}

/// Strict decimal parse (optional sign, digits, optional fraction and exponent).
/// Returns false on anything else, including "nan", "inf" and trailing junk.
inline bool parse_decimal(std::string_view text, double &out) {
    if (text.empty()) {
        return false;
    }
    size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        ++i;
    }
    size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++digits;
        }
    }
    if (digits == 0) {
        return false;
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            ++i;
        }
        size_t exp_digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
            ++exp_digits;
        }
        if (exp_digits == 0) {
            return false;
        }
    }
    if (i != text.size()) {
        return false;
    }
    // from_chars rejects a leading '+'.
    std::string_view body = text[0] == '+' ? text.substr(1) : text;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
    return ec == std::errc{} && ptr == body.data() + body.size() && std::isfinite(out);
}

/// Parses either a comma separated list "a,b,c" or an inclusive range
/// "start:stop:step". The stop value is included when it lies within half a
/// step of the last generated point.
inline std::vector<double> parse_grid(std::string_view text) {
    auto fail = [&](const std::string &why) {
        return std::invalid_argument("invalid grid '" + std::string(text) + "': " + why);
    };
    std::vector<double> values;
    if (text.find(':') != std::string_view::npos) {
        std::vector<std::string_view> parts;
        size_t start = 0;
        while (true) {
            size_t colon = text.find(':', start);
            parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
            if (colon == std::string_view::npos) {
                break;
            }
            start = colon + 1;
        }
        if (parts.size() != 3) {
            throw fail("expected start:stop:step");
        }
        double lo, hi, step;
        if (!parse_decimal(parts[0], lo) || !parse_decimal(parts[1], hi) || !parse_decimal(parts[2], step)) {
            throw fail("non-numeric field");
        }
        if (!(step > 0.0)) {
            throw fail("step must be positive");
        }
        if (hi < lo) {
            throw fail("stop below start");
        }
        auto count = static_cast<size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
        // Plain decimal fields are snapped back to their own decimal precision
        // so that 0:1:0.1 yields 0.3 rather than 0.30000000000000004.
        int decimals = 0;
        bool plain = true;
        for (auto part : parts) {
            if (part.find_first_of("eE") != std::string_view::npos) {
                plain = false;
            }
            if (auto dot = part.find('.'); dot != std::string_view::npos) {
                decimals = std::max(decimals, static_cast<int>(part.size() - dot - 1));
            }
        }
        double scale = std::pow(10.0, decimals);
        values.reserve(count);
        for (size_t k = 0; k < count; ++k) {
            double v = lo + static_cast<double>(k) * step;
            if (plain && decimals <= 12) {
                v = std::round(v * scale) / scale;
            }
            values.push_back(v);
        }
        return values;
    }
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        auto field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        double v;
        if (!parse_decimal(field, v)) {
            throw fail("bad value '" + std::string(field) + "'");
        }
        values.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return values;
}

/// Pairwise summation. The result depends only on the order of `values`, not on
/// how they were produced, which keeps parallel Monte Carlo runs bit-identical.
template <typename T>
T pairwise_sum(std::span<const T> values) {
    if (values.empty()) {
        return T{};
    }
    if (values.size() <= 8) {
        T acc = values[0];
        for (size_t i = 1; i < values.size(); ++i) {
            acc += values[i];
        }
        return acc;
    }
    size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-sample seed derived from a run seed and the sample index.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Each index is visited exactly once; fn must only write to
/// storage owned by its own index.
template <typename Fn>
void parallel_for_index(size_t n, Fn &&fn, unsigned threads = 0) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(n, 1)));
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        size_t lo = t * chunk;
        size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([lo, hi, &fn] {
            for (size_t i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
}

/// Mean and standard error of the mean of a sample, via pairwise sums.
struct SampleSummary {
    double mean = 0.0;
    double standard_error = 0.0;
};

inline SampleSummary summarize(std::span<const double> samples) {
    SampleSummary out;
    if (samples.empty()) {
        return out;
    }
    auto n = static_cast<double>(samples.size());
    out.mean = pairwise_sum(samples) / n;
    if (samples.size() > 1) {
        std::vector<double> sq(samples.size());
        for (size_t i = 0; i < samples.size(); ++i) {
            double d = samples[i] - out.mean;
            sq[i] = d * d;
        }
        double var = pairwise_sum(std::span<const double>(sq)) / (n - 1.0);
        out.standard_error = std::sqrt(var / n);
    }
    return out;
}

}  // namespace etele

#endif  // ETELE_NUMERIC_HPP
