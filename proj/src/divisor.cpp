#include "tropical/divisor.hpp"

#include <algorithm>

namespace tropical {

Divisor::Divisor(GraphPtr host) : host_(std::move(host)) {
    if (!host_) throw InvalidArgument("divisor needs a host graph");
}

Divisor::Coefficient Divisor::coefficient(const GraphPoint& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
}

Divisor& Divisor::add_point(const GraphPoint& p, Coefficient c) {
    if (p.is_vertex()) {
        if (p.vertex() >= host_->graph().vertex_count()) throw InvalidArgument("point is not on the host graph");
    } else if (p.edge() >= host_->graph().edge_count()) {
        throw InvalidArgument("point is not on the host graph");
    }
    if (c == 0) return *this;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

Divisor::Coefficient Divisor::degree() const {
    Coefficient sum = 0;
    for (const auto& [p, c] : terms_) sum += c;
    return sum;
}

std::vector<GraphPoint> Divisor::support() const {
    std::vector<GraphPoint> out;
    out.reserve(terms_.size());
    for (const auto& [p, c] : terms_) out.push_back(p);
    return out;
}

bool Divisor::is_effective() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

Divisor Divisor::operator-() const {
    Divisor out(host_);
    for (const auto& [p, c] : terms_) out.terms_.emplace(p, -c);
    return out;
}

void require_same_host(const GraphPtr& a, const GraphPtr& b) {
    if (a != b && !(*a == *b)) throw InvalidArgument("divisors live on different graphs");
}

Divisor operator+(const Divisor& a, const Divisor& b) {
    require_same_host(a.host_, b.host_);
    Divisor out = a;
    for (const auto& [p, c] : b.terms_) out.add_point(p, c);
    return out;
}

Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }

bool operator==(const Divisor& a, const Divisor& b) {
    if (a.host_ != b.host_ && !(*a.host_ == *b.host_)) return false;
    return a.terms_ == b.terms_;
}

Divisor canonical(const GraphPtr& g) {
    Divisor k(g);
    for (VertexIndex v = 0; v < g->graph().vertex_count(); ++v) {
        k.add_point(GraphPoint::at_vertex(v), g->graph().valence(v) - 2);
    }
    return k;
}

bool is_integral_divisor(const Divisor& d) {
    if (!d.graph().is_integral()) throw InvalidArgument("integrality of points is only defined on integral graphs");
    return std::all_of(d.terms().begin(), d.terms().end(),
                       [&](const auto& t) { return is_integral_point(d.graph(), t.first); });
}

bool is_rational_divisor(const Divisor& d) {
    (void)d;
    return true;
}

Divisor transport(const Divisor& d, const Rescaled& r) {
    Divisor out(r.graph);
    for (const auto& [p, c] : d.terms()) out.add_point(r.transport(p), c);
    return out;
}

Divisor transport_back(const Divisor& d, const Rescaled& r, const GraphPtr& original) {
    Divisor out(original);
    for (const auto& [p, c] : d.terms()) {
        if (p.is_vertex()) {
            out.add_point(p, c);
        } else {
            out.add_point(GraphPoint::on_edge(*original, p.edge(), p.offset() / r.factor), c);
        }
    }
    return out;
}

Divisor to_core(const Divisor& d, const CoreRetraction& r) {
    Divisor out(r.core);
    for (const auto& [p, c] : d.terms()) out.add_point(r.to_core(p), c);
    return out;
}

Divisor to_curve(const Divisor& d, const CoreRetraction& r) {
    Divisor out(r.curve);
    for (const auto& [p, c] : d.terms()) out.add_point(r.to_curve(p), c);
    return out;
}

std::string to_string(const Divisor& d) {
    if (d.is_zero()) return "0";
    std::string out;
    for (const auto& [p, c] : d.terms()) {
        if (!out.empty()) out += ", ";
        out += point_label(d.graph(), p) + ":" + std::to_string(c);
    }
    return out;
}

}  // namespace tropical
