#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glq/gamma.hpp"

namespace glq {

/// Verification scope: the set of (q, n) group sizes to quantify over.
struct Scope {
    std::vector<std::pair<std::uint64_t, int>> qn;

    bool has(std::uint64_t q, int n) const;
    std::vector<std::uint64_t> qs() const;
    /// n values present for a given q, ascending.
    std::vector<int> ns_for(std::uint64_t q) const;
    std::string to_string() const;
};

/// Stable ids of the verifiable statements.
std::vector<std::string> theorem_ids();

/// Largest scope that keeps the entry under a few minutes on a laptop.
Scope default_scope_for(const std::string& theorem_id);

/// Run one registry entry exhaustively over the scope.
/// Throws UnknownTheoremError for unknown ids.
VerdictReport verify(const std::string& theorem_id, const Scope& scope,
                     double tolerance = kIdentityTol);

/// Run a list of entries (all of theorem_ids() when ids is empty), fanning
/// out across `jobs` workers; reports are returned in request order.
std::vector<VerdictReport> verify_many(const std::vector<std::string>& ids, const Scope& scope,
                                       double tolerance = kIdentityTol, int jobs = 1);

/// As verify_many, but each entry runs over its own default scope.
std::vector<VerdictReport> verify_default_scopes(const std::vector<std::string>& ids,
                                                 double tolerance = kIdentityTol, int jobs = 1);

std::string format_report_text(const VerdictReport& r);

}  // namespace glq
