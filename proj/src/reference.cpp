#include "ivt/reference.hpp"

#include <sstream>

namespace ivt::reference {

namespace {

using adds::TableEntry;

std::string render_entries(const std::vector<TableEntry>& entries) {
    std::ostringstream out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out << ",";
        out << entries[i].rule_index << "(" << entries[i].point << ")";
    }
    return out.str();
}

}  // namespace

const std::vector<ReferenceRow>& table_rows(adds::Variant variant) {
    static const std::vector<ReferenceRow> kTypeI{
        {1, 0,
         {{0, 0}, {1, 0}, {2, 0}, {6, 0}, {7, 0}, {8, 0}, {9, 0}, {10, 0}, {11, 0}},
         {{0, 0}, {6, 0}, {9, 0}},
         {{0, 0}},
         {{0, 0}}},
        {1, 1, {{0, 1}, {1, 1}, {6, 3}, {7, 1}}, {{0, 1}, {1, 1}}, {{0, 1}}, {{0, 1}}},
        {1, 2, {{0, 2}, {2, 2}, {9, 2}, {11, 2}}, {{0, 2}, {2, 2}}, {{0, 2}}, {{0, 2}}},
        {2, 2, {{0, 2}, {1, 2}, {18, 6}}, {{0, 2}, {1, 2}}, {{0, 2}}, {{0, 2}}},
        {2, 0,
         {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {18, 0}, {19, 0}, {20, 0}},
         {{0, 0}, {18, 0}},
         {{0, 0}},
         {{0, 0}}},
        {2, 1, {{0, 1}, {2, 1}, {3, 3}}, {{0, 1}, {2, 1}}, {{0, 1}}, {{0, 1}}},
    };
    static const std::vector<ReferenceRow> kTypeII{
        {1, 0,
         {{0, 0}, {1, 0}, {2, 0}, {6, 0}, {7, 0}, {8, 0}, {9, 0}, {10, 0}, {11, 0}},
         {{0, 0}, {6, 0}, {9, 0}},
         {{0, 0}},
         {{0, 0}}},
        {1, 1, {{0, 0}, {1, 0}, {6, 2}, {7, 0}}, {{0, 0}, {1, 0}}, {{0, 0}}, {{0, 0}}},
        {1, 2, {{0, 0}, {2, 0}, {9, 0}, {11, 0}}, {{0, 0}, {2, 0}}, {{0, 0}}, {{0, 0}}},
        {2, 2, {{0, 0}, {1, 0}, {18, 2}}, {{0, 0}, {1, 0}}, {{0, 0}}, {{0, 0}}},
        {2, 0,
         {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {18, 0}, {19, 0}, {20, 0}},
         {{0, 0}, {3, 0}, {18, 0}},
         {{0, 0}},
         {{0, 0}}},
        {2, 1, {{0, 0}, {2, 0}, {3, 1}}, {{0, 0}, {2, 0}}, {{0, 0}}, {{0, 0}}},
    };
    return variant == adds::Variant::kTypeI ? kTypeI : kTypeII;
}

std::vector<std::string> diff_against_reference(const std::vector<adds::TableRow>& rows,
                                                adds::Variant variant, unsigned base) {
    std::vector<std::string> warnings;
    if (base != 3) return warnings;  // reference data exists for base 3 only
    const auto& reference = table_rows(variant);
    for (const auto& row : rows) {
        const ReferenceRow* ref = nullptr;
        for (const auto& candidate : reference)
            if (candidate.mul == row.mul && candidate.add == row.add) ref = &candidate;
        if (!ref) continue;

        auto check = [&](const char* column, const std::vector<TableEntry>& measured,
                         const std::vector<TableEntry>& expected) {
            if (measured == expected) return;
            std::ostringstream msg;
            msg << "type-" << adds::to_string(variant) << " row (" << row.mul << "," << row.add
                << ") " << column << " differs from reference: measured {"
                << render_entries(measured) << "} reference {" << render_entries(expected)
                << "}";
            warnings.push_back(msg.str());
        };
        check("attractors", row.attractors, ref->attractors);
        check("unique-steady", row.unique_steady, ref->unique_steady);
        check("locally-stable", row.locally_stable, ref->locally_stable);
        check("globally-stable", row.globally_stable, ref->globally_stable);
    }
    return warnings;
}

}  // namespace ivt::reference
