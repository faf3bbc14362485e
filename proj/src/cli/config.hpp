#pragma once

// Strict reader over a JSON config: every key must be consumed, so typos
// surface as input errors instead of silently falling back to defaults.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sigreg/kernel.hpp"
#include "sigreg/quadrature.hpp"
#include "sigreg/ratios.hpp"
#include "sigreg/report_json.hpp"

namespace sigreg::cli {

class Section {
public:
    Section(const Json& j, std::string path);

    bool has(const std::string& key) const;
    /// Numbers; the strings "inf" and "-inf" are accepted.
    double number(const std::string& key, double fallback);
    std::size_t count(const std::string& key, std::size_t fallback);
    std::uint64_t u64(const std::string& key, std::uint64_t fallback);
    bool flag(const std::string& key, bool fallback);
    std::string text(const std::string& key, const std::string& fallback);
    std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
    /// A grid: an array of values, {"values": [...]}, or
    /// {"type": "uniform"|"geometric", "lo", "hi", "count"}.
    std::vector<double> grid(const std::string& key, const Json& fallback);
    Section child(const std::string& key);
    std::vector<Section> children(const std::string& key);
    const Json& raw(const std::string& key);

    const std::string& path() const { return path_; }
    /// Throws InputError naming the first key that was never read.
    void finish() const;

private:
    const Json& at(const std::string& key);

    const Json* j_;
    std::string path_;
    std::set<std::string> used_;
};

double json_number(const Json& v, const std::string& where);
std::vector<double> parse_grid(const Json& g, const std::string& where);
Json grid_spec(const std::string& type, double lo, double hi, std::size_t count);

KernelDescriptor parse_kernel(Section s);
QuadratureSpec parse_quadrature(Section s);
/// sum of c t^p e^{-s t} over the listed terms, or a plain constant.
Profile parse_profile(const Json& j, const std::string& where);

}  // namespace sigreg::cli
