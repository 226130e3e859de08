#pragma once

// End-to-end decomposition of an integral body into
//   t + kx*Ix + ky*Iy + sum kT*T.
// Polygons go through a unimodular triangulation and its partition
// relation; every dividing segment is then replaced by its descent form.

#include <optional>

#include "tropfactor/lattice.hpp"
#include "tropfactor/partition.hpp"
#include "tropfactor/segment_decomposer.hpp"
#include "tropfactor/signed_algebra.hpp"

namespace tropfactor {

enum class VerifyMode { support, full };

/// Raised when a produced decomposition fails its own check. Signals a defect.
class InvariantError : public Error {
public:
    using Error::Error;
};

struct DecompositionStats {
    Int max_abs_coefficient = 0;
    std::size_t distinct_triangles = 0;
};

struct DecompositionReport {
    Body input;
    NormalForm normal_form;
    std::size_t cells = 0;
    std::size_t dividing = 0;
    bool verified = false;
    DecompositionStats stats;
    std::optional<Partition> partition;  // polygons only
};

inline DecompositionReport decompose(const Body& body, VerifyMode mode = VerifyMode::full,
                                     SegmentDecomposer* cache = nullptr) {
    SegmentDecomposer local;
    SegmentDecomposer& segments = cache ? *cache : local;
    DecompositionReport report{body, {}, 0, 0, false, {}, std::nullopt};

    switch (body.kind()) {
        case BodyKind::point:
            report.normal_form = translation_form(body[0]);
            break;
        case BodyKind::segment:
            report.normal_form = segments.decompose_segment(body[0], body[1]);
            break;
        case BodyKind::polygon: {
            Partition part = unimodular_triangulation(body);
            NormalForm nf;
            for (const Body& cell : part.cell_bodies()) nf.add_term(normalize_term(cell), 1);
            for (const IndexPair& d : part.dividing_segments()) {
                Point a = part.points()[d.first], b = part.points()[d.second];
                if (!is_prime_segment(a, b)) throw InvariantError("dividing segment is not prime");
                nf -= segments.decompose_segment(a, b);
            }
            for (std::size_t i : part.interior()) nf.t += part.points()[i];
            report.cells = part.cell_bodies().size();
            report.dividing = part.dividing_segments().size();
            report.normal_form = std::move(nf);
            report.partition = std::move(part);
            break;
        }
    }

    const auto dirs = standard_directions();
    report.verified = mode == VerifyMode::full ? verify_identity(body, report.normal_form)
                                               : support_check(body, report.normal_form, dirs);
    if (!report.verified) throw InvariantError("decomposition invariant violated");
    report.stats.max_abs_coefficient = max_abs_coefficient(report.normal_form);
    report.stats.distinct_triangles = report.normal_form.triangles.size();
    return report;
}

}  // namespace tropfactor
