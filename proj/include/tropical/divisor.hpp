#pragma once

#include "tropical/graph.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace tropical {

/// Finite integer combination of points of a host graph. Zero coefficients
/// are never stored, so the key set is exactly the support.
class Divisor {
public:
    using Coefficient = std::int64_t;

    explicit Divisor(GraphPtr host);

    const GraphPtr& host() const { return host_; }
    const MetricGraph& graph() const { return *host_; }
    const std::map<GraphPoint, Coefficient>& terms() const { return terms_; }

    Coefficient coefficient(const GraphPoint& p) const;
    /// Adds c to the coefficient at p, erasing the entry when it reaches zero.
    Divisor& add_point(const GraphPoint& p, Coefficient c = 1);

    Coefficient degree() const;
    std::vector<GraphPoint> support() const;
    bool is_effective() const;
    bool is_zero() const { return terms_.empty(); }

    Divisor operator-() const;
    friend Divisor operator+(const Divisor& a, const Divisor& b);
    friend Divisor operator-(const Divisor& a, const Divisor& b);
    friend bool operator==(const Divisor& a, const Divisor& b);

private:
    GraphPtr host_;
    std::map<GraphPoint, Coefficient> terms_;
};

/// Throws unless both divisors live on the same graph.
void require_same_host(const GraphPtr& a, const GraphPtr& b);

/// Sum over vertices of (valence - 2) * vertex; unbounded ends count as
/// valence-one vertices.
Divisor canonical(const GraphPtr& g);

/// Support inside the integer points. Requires an integral graph.
bool is_integral_divisor(const Divisor& d);
/// Support inside the rational points; always true for representable points.
bool is_rational_divisor(const Divisor& d);

/// Moves a divisor to a rescaled copy of its host.
Divisor transport(const Divisor& d, const Rescaled& r);
Divisor transport_back(const Divisor& d, const Rescaled& r, const GraphPtr& original);

/// Moves a core-supported divisor between a curve and its core.
Divisor to_core(const Divisor& d, const CoreRetraction& r);
Divisor to_curve(const Divisor& d, const CoreRetraction& r);

/// "P:1, e@1/2:-2" style text; "0" for the zero divisor.
std::string to_string(const Divisor& d);

}  // namespace tropical
