#pragma once

#include "einlike/gray.hpp"
#include "einlike/sampling.hpp"

#include <optional>
#include <string>

namespace einlike {

enum class ManifestKind { plain_metric, doubly_warped, spacetime };

const char* manifest_kind_name(ManifestKind k);

struct ToleranceSpec {
    double atol = 1e-9;
    double rtol = 1e-6;
};

/// A parsed run manifest: the geometric object under study plus sampling and
/// tolerance policy. See docs/file-formats.md for the JSON schema.
struct Manifest {
    ManifestKind kind = ManifestKind::plain_metric;
    std::string name;
    std::string digest;  // FNV-1a 64 of the manifest bytes, hex

    std::optional<MetricField> metric;      // plain_metric
    std::optional<ProductSpec> product;     // doubly_warped (and spacetime view)
    std::optional<SpacetimeSpec> spacetime; // spacetime

    std::optional<ScalarExpr> conformal_factor;  // for the conformal check

    SamplingSpec sampling;
    ToleranceSpec tolerances;

    /// The metric whose chart sampling/classification runs on: plain metric,
    /// assembled product, or assembled spacetime.
    const MetricField& chart_metric() const;
};

Manifest parse_manifest(const std::string& json_text);
Manifest load_manifest(const std::string& path);

/// FNV-1a 64-bit hash, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

} // namespace einlike
