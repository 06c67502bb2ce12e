#include "relsim/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relsim {

const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::constant: return "constant";
        case FamilyKind::reciprocal: return "reciprocal";
        case FamilyKind::aging: return "aging";
        case FamilyKind::cross_step: return "cross_step";
        case FamilyKind::piecewise_table: return "piecewise_table";
    }
    return "?";
}

namespace {

std::size_t cell_index(const std::vector<double>& edges, double v) {
    // edges strictly increasing; cell k covers [edges[k-1], edges[k]).
    return static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
}

[[noreturn]] void reject(const char* name, const FamilyDescriptor& f,
                         const std::string& constraint) {
    throw std::invalid_argument(std::string("intensity bound violation: family ") +
                                name + " (" + to_string(f.kind) + "): " + constraint);
}

}  // namespace

IntensityModel::IntensityModel(FamilyDescriptor lambda, FamilyDescriptor mu,
                               double gamma, double Gamma)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), gamma_(gamma), Gamma_(Gamma) {
    if (!(gamma_ > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (!(Gamma_ >= gamma_)) throw std::invalid_argument("Gamma must be >= gamma");
    certify(lambda_, "lambda");
    certify(mu_, "mu");
}

IntensityModel IntensityModel::unchecked(FamilyDescriptor lambda, FamilyDescriptor mu,
                                         double gamma, double Gamma) {
    IntensityModel m(constant_family(gamma), constant_family(gamma), gamma,
                     Gamma >= gamma ? Gamma : gamma);
    m.lambda_ = std::move(lambda);
    m.mu_ = std::move(mu);
    m.Gamma_ = Gamma;
    return m;
}

void IntensityModel::certify(const FamilyDescriptor& f, const char* name) const {
    switch (f.kind) {
        case FamilyKind::constant:
            if (!(f.c >= gamma_)) reject(name, f, "c >= gamma fails (lower bound at own=0)");
            if (!(f.c <= Gamma_)) reject(name, f, "c <= Gamma fails");
            break;
        case FamilyKind::reciprocal:
            if (!(f.a >= 0.0)) reject(name, f, "a >= 0 fails");
            if (!(f.b >= gamma_)) reject(name, f, "b >= gamma fails");
            if (!(f.a + f.b <= Gamma_)) reject(name, f, "a + b <= Gamma fails");
            break;
        case FamilyKind::aging:
            if (!(f.g0 >= gamma_)) reject(name, f, "g0 >= gamma fails");
            if (!(f.g0 <= Gamma_)) reject(name, f, "g0 <= Gamma fails");
            break;
        case FamilyKind::cross_step:
            if (!(f.g0 >= gamma_)) reject(name, f, "g0 >= gamma fails");
            if (!(f.beta >= 0.0)) reject(name, f, "beta >= 0 fails");
            if (!(f.g0 + f.beta <= Gamma_)) reject(name, f, "g0 + beta <= Gamma fails");
            if (!(f.x0 >= 0.0)) reject(name, f, "x0 >= 0 fails");
            break;
        case FamilyKind::piecewise_table: {
            if (!std::is_sorted(f.x_edges.begin(), f.x_edges.end()) ||
                !std::is_sorted(f.y_edges.begin(), f.y_edges.end()))
                reject(name, f, "table edges must be increasing");
            const std::size_t n = (f.x_edges.size() + 1) * (f.y_edges.size() + 1);
            for (int r = 0; r < 4; ++r) {
                if (f.table_values[r].size() != n)
                    reject(name, f, "table size mismatch");
                for (double v : f.table_values[r]) {
                    if (!(v >= gamma_)) reject(name, f, "cell value >= gamma fails");
                    if (!(v <= Gamma_)) reject(name, f, "cell value <= Gamma fails");
                }
            }
            break;
        }
    }
}

double IntensityModel::eval_family(const FamilyDescriptor& f, double own, double other,
                                   const State& z) const {
    switch (f.kind) {
        case FamilyKind::constant:
            return f.c;
        case FamilyKind::reciprocal:
            return f.a + f.b / (1.0 + own);
        case FamilyKind::aging:
            return Gamma_ - (Gamma_ - f.g0) / (1.0 + own);
        case FamilyKind::cross_step:
            return f.g0 / (1.0 + own) + (other > f.x0 ? f.beta : 0.0);
        case FamilyKind::piecewise_table: {
            const std::size_t cx = cell_index(f.x_edges, z.x);
            const std::size_t cy = cell_index(f.y_edges, z.y);
            return f.table_values[2 * z.i + z.j][cx * (f.y_edges.size() + 1) + cy];
        }
    }
    return 0.0;
}

std::vector<double> IntensityModel::breakpoints(const State& z, double horizon) const {
    if (!(horizon >= 0.0)) throw std::invalid_argument("breakpoints: horizon must be >= 0");
    std::vector<double> out;
    auto push = [&](double s) {
        if (s > 0.0 && s < horizon) out.push_back(s);
    };
    for (const FamilyDescriptor* f : {&lambda_, &mu_}) {
        const bool is_lambda = (f == &lambda_);
        switch (f->kind) {
            case FamilyKind::cross_step:
                // Discontinuous in the OTHER element's elapsed time.
                push(f->x0 - (is_lambda ? z.y : z.x));
                break;
            case FamilyKind::piecewise_table:
                for (double e : f->x_edges) push(e - z.x);
                for (double e : f->y_edges) push(e - z.y);
                break;
            default:
                break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<BoundViolation> IntensityModel::verify_bounds(
    const std::vector<State>& grid) const {
    if (grid.empty()) throw std::invalid_argument("verify_bounds: empty grid");
    std::vector<BoundViolation> out;
    for (const State& z : grid) {
        const Rates r = evaluate(z);
        const double lo_l = gamma_ / (1.0 + z.x);
        const double lo_m = gamma_ / (1.0 + z.y);
        if (r.lambda < lo_l)
            out.push_back({z, "lambda >= gamma/(1+x)", lo_l - r.lambda});
        if (r.lambda > Gamma_)
            out.push_back({z, "lambda <= Gamma", r.lambda - Gamma_});
        if (r.mu < lo_m)
            out.push_back({z, "mu >= gamma/(1+y)", lo_m - r.mu});
        if (r.mu > Gamma_)
            out.push_back({z, "mu <= Gamma", r.mu - Gamma_});
    }
    return out;
}

FamilyDescriptor constant_family(double c) {
    FamilyDescriptor f;
    f.kind = FamilyKind::constant;
    f.c = c;
    return f;
}

FamilyDescriptor reciprocal_family(double a, double b) {
    FamilyDescriptor f;
    f.kind = FamilyKind::reciprocal;
    f.a = a;
    f.b = b;
    return f;
}

FamilyDescriptor aging_family(double g0) {
    FamilyDescriptor f;
    f.kind = FamilyKind::aging;
    f.g0 = g0;
    return f;
}

FamilyDescriptor cross_step_family(double g0, double beta, double x0) {
    FamilyDescriptor f;
    f.kind = FamilyKind::cross_step;
    f.g0 = g0;
    f.beta = beta;
    f.x0 = x0;
    return f;
}

std::vector<State> default_validation_grid() {
    constexpr int n = 64;
    std::vector<double> axis(n);
    for (int k = 0; k < n; ++k)
        axis[k] = std::expm1(std::log1p(1000.0) * k / (n - 1));
    std::vector<State> grid;
    grid.reserve(4 * n * n);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (double x : axis)
                for (double y : axis) grid.push_back({i, x, j, y});
    return grid;
}

}  // namespace relsim
