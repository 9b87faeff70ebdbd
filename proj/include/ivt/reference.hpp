#pragma once

// Bundled reference data for the base-3 simulation tables and related
// published figures, used to cross-check computed results. Mismatches are
// reported as warnings with the measured value; the tool never silently
// "fixes" either side.

#include <string>
#include <vector>

#include "ivt/adds.hpp"

namespace ivt::reference {

struct ReferenceRow {
    Value mul;
    Value add;
    std::vector<adds::TableEntry> attractors;
    std::vector<adds::TableEntry> unique_steady;
    std::vector<adds::TableEntry> locally_stable;
    std::vector<adds::TableEntry> globally_stable;
};

/// Reference rows for base 3 (six coefficient pairs per variant).
const std::vector<ReferenceRow>& table_rows(adds::Variant variant);

/// Compares computed rows against the reference by (mul, add) key.
/// Returns one warning line per differing column; rows without a
/// reference counterpart are skipped.
std::vector<std::string> diff_against_reference(const std::vector<adds::TableRow>& rows,
                                                adds::Variant variant, unsigned base);

}  // namespace ivt::reference
