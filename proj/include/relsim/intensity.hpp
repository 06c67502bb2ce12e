#pragma once

#include <array>
#include <string>
#include <vector>

#include "relsim/state.hpp"

namespace relsim {

enum class FamilyKind { constant, reciprocal, aging, cross_step, piecewise_table };

const char* to_string(FamilyKind k);

// One intensity family.  "own" is the element's elapsed time (x for the
// first-element intensity, y for the second), "other" the partner's.
//
//   constant(c)                c
//   reciprocal(a,b)            a + b/(1+own)
//   aging(g0)                  Gamma - (Gamma-g0)/(1+own)
//   cross_step(g0,beta,x0)     g0/(1+own) + beta*1(other > x0)
//   piecewise_table            constant on axis-aligned cells of (x,y),
//                              one table per (i,j) regime pair
struct FamilyDescriptor {
    FamilyKind kind = FamilyKind::constant;
    double c = 1.0;
    double a = 0.0, b = 1.0;
    double g0 = 1.0;
    double beta = 0.0, x0 = 0.0;
    // piecewise_table: strictly increasing interior edges; values stored
    // row-major per regime index 2*i+j, size (x_edges+1)*(y_edges+1).
    std::vector<double> x_edges, y_edges;
    std::array<std::vector<double>, 4> table_values;
};

struct BoundViolation {
    State state;
    std::string inequality;  // which bound failed
    double margin;           // positive = amount by which it failed
};

// Evaluable pair (lambda, mu) with the bound certificate
// gamma/(1+own) <= rate <= Gamma verified analytically at construction.
class IntensityModel {
  public:
    struct Rates {
        double lambda, mu, Lambda;
    };

    IntensityModel(FamilyDescriptor lambda, FamilyDescriptor mu, double gamma,
                   double Gamma);

    // Skips the analytic certificate.  Fault-injection and testing only;
    // every guarantee downstream assumes the certified constructor.
    static IntensityModel unchecked(FamilyDescriptor lambda, FamilyDescriptor mu,
                                    double gamma, double Gamma);

    double lambda(const State& z) const { return eval_family(lambda_, z.x, z.y, z); }
    double mu(const State& z) const { return eval_family(mu_, z.y, z.x, z); }
    Rates evaluate(const State& z) const {
        const double l = lambda(z), m = mu(z);
        return {l, m, l + m};
    }

    double gamma() const { return gamma_; }
    double Gamma() const { return Gamma_; }
    const FamilyDescriptor& lambda_family() const { return lambda_; }
    const FamilyDescriptor& mu_family() const { return mu_; }

    // All s in (0,horizon) where s -> Lambda(flow(z,s)) may jump.
    std::vector<double> breakpoints(const State& z, double horizon) const;

    // Grid spot-check of the certificate; empty result means pass.
    std::vector<BoundViolation> verify_bounds(const std::vector<State>& grid) const;

  private:
    double eval_family(const FamilyDescriptor& f, double own, double other,
                       const State& z) const;
    void certify(const FamilyDescriptor& f, const char* name) const;

    FamilyDescriptor lambda_, mu_;
    double gamma_, Gamma_;
};

// Convenience builders used throughout the tests.
FamilyDescriptor constant_family(double c);
FamilyDescriptor reciprocal_family(double a, double b);
FamilyDescriptor aging_family(double g0);
FamilyDescriptor cross_step_family(double g0, double beta, double x0);

// Default validation grid: 64 log-spaced points per axis on [0,1000],
// all four regime pairs.
std::vector<State> default_validation_grid();

}  // namespace relsim
