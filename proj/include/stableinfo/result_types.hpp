#pragma once

namespace stableinfo {

enum class Method { NolanIntegral, FourierFallback, GaussianExact };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::NolanIntegral: return "nolan";
        case Method::FourierFallback: return "fourier";
        case Method::GaussianExact: return "gaussian";
    }
    return "?";
}

/// Density (or spatial-derivative) evaluation with its error estimate and the
/// branch that produced it.
struct DensityResult {
    double value = 0.0;
    double abs_error = 0.0;
    long n_evals = 0;
    Method method = Method::NolanIntegral;
    bool converged = false;
};

/// Parameter derivative of the density (f_alpha or f_beta). one_sided marks
/// the boundary case alpha = 2, where only the left derivative exists.
struct DerivResult {
    double value = 0.0;
    double abs_error = 0.0;
    long n_evals = 0;
    bool converged = false;
    bool one_sided = false;
};

}  // namespace stableinfo
