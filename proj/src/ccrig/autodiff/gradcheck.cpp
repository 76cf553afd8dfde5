#include "ccrig/autodiff/gradcheck.hpp"

#include <cmath>

namespace ccrig {

GradCheckReport grad_check(const std::vector<std::pair<std::string, Mat*>>& params,
                           const std::function<Var(Tape&)>& build, float epsilon) {
    Tape tape;
    Var loss = build(tape);
    tape.backward(loss);
    std::vector<Mat> analytic;
    analytic.reserve(params.size());
    for (const auto& [name, p] : params) analytic.push_back(tape.grad_for(p));

    auto eval = [&]() {
        Tape t;
        return t.scalar_value(build(t));
    };

    GradCheckReport report;
    for (size_t pi = 0; pi < params.size(); ++pi) {
        Mat* p = params[pi].second;
        double diff_sq = 0.0, fd_sq = 0.0, ad_sq = 0.0;
        for (size_t i = 0; i < p->size(); ++i) {
            float saved = (*p)[i];
            (*p)[i] = saved + epsilon;
            double lp = eval();
            (*p)[i] = saved - epsilon;
            double lm = eval();
            (*p)[i] = saved;
            double fd = (lp - lm) / (2.0 * epsilon);
            double ad = analytic[pi][i];
            diff_sq += (fd - ad) * (fd - ad);
            fd_sq += fd * fd;
            ad_sq += ad * ad;
        }
        double denom = std::max(std::sqrt(fd_sq), std::sqrt(ad_sq));
        double rel = denom > 1e-12 ? std::sqrt(diff_sq) / denom : std::sqrt(diff_sq);
        if (rel > report.max_rel_err) {
            report.max_rel_err = rel;
            report.worst_param = params[pi].first;
        }
    }
    return report;
}

}  // namespace ccrig
