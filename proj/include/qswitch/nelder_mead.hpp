#pragma once

#include <algorithm>
#include <functional>
#include <vector>

// Derivative-free downhill-simplex minimizer (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5). Deterministic for a fixed start point.

namespace qswitch {

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    long long evaluations = 0;
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& x0, double initial_step,
                                    double f_tolerance, int max_iterations) {
    const int n = static_cast<int>(x0.size());
    long long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    struct Point {
        std::vector<double> x;
        double f;
    };
    std::vector<Point> s;
    s.reserve(n + 1);
    s.push_back({x0, eval(x0)});
    for (int i = 0; i < n; ++i) {
        std::vector<double> x = x0;
        x[i] += initial_step;
        const double fx = eval(x);
        s.push_back({std::move(x), fx});
    }

    auto by_f = [](const Point& a, const Point& b) { return a.f < b.f; };
    std::stable_sort(s.begin(), s.end(), by_f);

    for (int iter = 0; iter < max_iterations; ++iter) {
        if (s[n].f - s[0].f <= f_tolerance) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += s[i].x[j] / n;

        auto blend = [&](double coef) {
            std::vector<double> x(n);
            for (int j = 0; j < n; ++j) x[j] = centroid[j] + coef * (centroid[j] - s[n].x[j]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = eval(xr);
        if (fr < s[0].f) {
            std::vector<double> xe = blend(2.0);
            const double fe = eval(xe);
            if (fe < fr)
                s[n] = {std::move(xe), fe};
            else
                s[n] = {std::move(xr), fr};
        } else if (fr < s[n - 1].f) {
            s[n] = {std::move(xr), fr};
        } else {
            const bool outside = fr < s[n].f;
            std::vector<double> xc = blend(outside ? 0.5 : -0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : s[n].f)) {
                s[n] = {std::move(xc), fc};
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        s[i].x[j] = s[0].x[j] + 0.5 * (s[i].x[j] - s[0].x[j]);
                    s[i].f = eval(s[i].x);
                }
            }
        }
        std::stable_sort(s.begin(), s.end(), by_f);
    }
    return NelderMeadResult{s[0].x, s[0].f, evals};
}

}  // namespace qswitch
