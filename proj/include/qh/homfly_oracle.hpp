#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qh/qscalar.hpp"
#include "qh/skein_engine.hpp"
#include "qh/twobridge.hpp"

namespace qh {

// Arc ids listed counterclockwise starting at the incoming under-strand, so
// arcs[0] enters and arcs[2] leaves along the under-strand. The over-strand
// enters at arcs[3] for a positive crossing and at arcs[1] for a negative one.
struct PDCrossing {
    int sign = 1;
    std::array<int, 4> arcs{};
};

struct PlanarDiagram {
    std::vector<PDCrossing> crossings;
    int num_arcs = 0;
};

// one entry per component: (crossing, passes over) in traversal order
using GaussCode = std::vector<std::vector<std::pair<int, bool>>>;

enum class SkeinConvention { Standard, Mirrored };

PlanarDiagram build_plat(const ContinuedFraction& cf, Family start = Family::UP);
GaussCode gauss_code(const PlanarDiagram& d);
int diagram_components(const PlanarDiagram& d);
int writhe(const PlanarDiagram& d);
bool is_alternating(const PlanarDiagram& d);

// reduced HOMFLY with a P+ - a^-1 P- = (q - q^-1) P0 (Standard) or its mirror
QScalar homfly(const PlanarDiagram& d, SkeinConvention conv = SkeinConvention::Standard, bool memo = true);
// reduced Jones polynomial, normalized to agree with homfly at a = q^2
QScalar jones_kauffman(const PlanarDiagram& d);

}  // namespace qh
