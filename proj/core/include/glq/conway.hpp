#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace glq {

/// Table of Conway polynomials used to pick field moduli deterministically.
///
/// File format (shipped as core/data/conway_polynomials.txt, format 1):
/// comment lines start with '#'; every other line is
///   p degree c0 c1 ... cdeg
/// with coefficients low-to-high and cdeg = 1.
class ConwayTable {
public:
    /// The compiled-in copy of the shipped table (p <= 7, degree <= 8).
    static const ConwayTable& builtin();

    /// Parse a table in the shipped text format.  Throws Error on malformed
    /// input or on entries that are not monic.
    static ConwayTable parse(const std::string& text);

    static ConwayTable load_file(const std::string& path);

    /// Coefficients (low-to-high, length degree+1) or nullopt if the table
    /// has no entry for (p, degree).
    std::optional<std::vector<std::uint32_t>> lookup(std::uint32_t p, std::uint32_t degree) const;

    int format_version() const { return format_version_; }
    std::size_t size() const { return entries_.size(); }

private:
    struct Entry {
        std::uint32_t p;
        std::uint32_t degree;
        std::vector<std::uint32_t> coeffs;
    };
    std::vector<Entry> entries_;
    int format_version_ = 0;
};

}  // namespace glq
