#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "disagvar/survey/measures.hpp"

namespace disagvar::survey {

// First principal component of two or more standardized question indices
// observed on identical dates. Loadings come from the leading eigenvector
// of the cross-question correlation matrix; the sign is fixed so the
// loadings sum is nonnegative, and the component is rescaled to mean zero,
// unit sample variance. explained_variance_share is the leading eigenvalue
// over the number of questions.
inline DisagreementIndex pca_first_component(
    const std::vector<DisagreementIndex>& inputs,
    const std::vector<std::string>& question_ids) {
    const size_t m = inputs.size();
    if (m < 2) throw data_error("aggregation needs at least 2 question indices");
    if (question_ids.size() != m)
        throw data_error("aggregation: one question id per input index required");
    const auto& dates = inputs[0].dates;
    const size_t T = dates.size();
    for (size_t j = 0; j < m; ++j) {
        const auto& ix = inputs[j];
        if (!ix.standardized)
            throw data_error("aggregation input '" + question_ids[j] +
                             "' is not standardized");
        if (ix.dates != dates)
            throw data_error("aggregation input '" + question_ids[j] +
                             "' is not aligned with '" + question_ids[0] + "'");
        for (size_t t = 0; t < T; ++t)
            if (!std::isfinite(ix.values[t]))
                throw data_error("aggregation input '" + question_ids[j] +
                                 "' has a non-finite value at " + dates[t].str());
    }
    Eigen::MatrixXd Z(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(m));
    for (size_t j = 0; j < m; ++j)
        for (size_t t = 0; t < T; ++t)
            Z(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = inputs[j].values[t];

    // Inputs are standardized, so the sample second-moment matrix is the
    // correlation matrix up to the n-1 convention used throughout.
    Eigen::MatrixXd corr = (Z.transpose() * Z) / static_cast<double>(T - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
    if (eig.info() != Eigen::Success)
        throw numeric_error("eigendecomposition of the question correlation matrix failed");
    const Eigen::Index last = corr.rows() - 1;
    Eigen::VectorXd load = eig.eigenvectors().col(last);
    if (load.sum() < 0.0) load = -load;
    const double lambda1 = eig.eigenvalues()(last);

    Eigen::VectorXd scores = Z * load;

    DisagreementIndex out;
    out.method = IndexMethod::pca;
    out.dates = dates;
    out.values.assign(scores.data(), scores.data() + scores.size());
    out.source_questions = question_ids;
    out.loadings.assign(load.data(), load.data() + load.size());
    out.explained_variance_share = lambda1 / static_cast<double>(m);
    return standardize(std::move(out));
}

} // namespace disagvar::survey
