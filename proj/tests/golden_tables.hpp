#pragma once

namespace golden {

// Composition tables typed in again from the published tables, row ⋄ column,
// cells as '|' joined names. Kept as text so that they share nothing with the
// bitmask constants of the library.
inline const char* const kRcc5Rows[5][5] = {
    {"*", "DR|PO|PP", "DR|PO|PP", "DR", "DR"},
    {"DR|PO|PPi", "*", "PO|PP", "DR|PO|PPi", "PO"},
    {"DR", "DR|PO|PP", "PP", "*", "PP"},
    {"DR|PO|PPi", "PO|PPi", "PO|PP|PPi|EQ", "PPi", "PPi"},
    {"DR", "PO", "PP", "PPi", "EQ"},
};

inline const char* const kRcc8Rows[8][8] = {
    // DC
    {"*", "DC|EC|PO|TPP|NTPP", "DC|EC|PO|TPP|NTPP", "DC|EC|PO|TPP|NTPP", "DC|EC|PO|TPP|NTPP", "DC",
     "DC", "DC"},
    // EC
    {"DC|EC|PO|TPPi|NTPPi", "DC|EC|PO|EQ|TPP|TPPi", "DC|EC|PO|TPP|NTPP", "EC|PO|TPP|NTPP",
     "PO|TPP|NTPP", "DC|EC", "DC", "EC"},
    // PO
    {"DC|EC|PO|TPPi|NTPPi", "DC|EC|PO|TPPi|NTPPi", "*", "PO|TPP|NTPP", "PO|TPP|NTPP",
     "DC|EC|PO|TPPi|NTPPi", "DC|EC|PO|TPPi|NTPPi", "PO"},
    // TPP
    {"DC", "DC|EC", "DC|EC|PO|TPP|NTPP", "TPP|NTPP", "NTPP", "DC|EC|PO|EQ|TPP|TPPi",
     "DC|EC|PO|TPPi|NTPPi", "TPP"},
    // NTPP
    {"DC", "DC", "DC|EC|PO|TPP|NTPP", "NTPP", "NTPP", "DC|EC|PO|TPP|NTPP", "*", "NTPP"},
    // TPPi
    {"DC|EC|PO|TPPi|NTPPi", "EC|PO|TPPi|NTPPi", "PO|TPPi|NTPPi", "PO|EQ|TPP|TPPi", "PO|TPP|NTPP",
     "TPPi|NTPPi", "NTPPi", "TPPi"},
    // NTPPi
    {"DC|EC|PO|TPPi|NTPPi", "PO|TPPi|NTPPi", "PO|TPPi|NTPPi", "PO|TPPi|NTPPi",
     "PO|TPP|EQ|NTPP|TPPi|NTPPi", "NTPPi", "NTPPi", "NTPPi"},
    // EQ
    {"DC", "EC", "PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ"},
};

}  // namespace golden
