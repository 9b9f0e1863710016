#pragma once

#include <span>

namespace caea {

/// Fraction of exact matches between truth and predicted class ids.
double accuracy(std::span<const int> truth, std::span<const int> predicted);

/// Normalized mutual information I(U;V)/sqrt(H(U)H(V)) over the label
/// contingency table, natural logarithms. Relabel-invariant. When either
/// partition has a single cluster: 1.0 if both do, else 0.0.
double nmi(std::span<const int> truth, std::span<const int> predicted);

/// Hubert-Arabie adjusted Rand index in [-1, 1]; pair counts are formed in
/// exact integer arithmetic with a single final division. When the
/// chance-corrected denominator is zero (all pair relations agree), 1.0.
double ari(std::span<const int> truth, std::span<const int> predicted);

/// Unweighted mean of per-class F1 over the classes present in truth; a
/// class with zero precision and recall contributes 0.
double macro_f1(std::span<const int> truth, std::span<const int> predicted);

}  // namespace caea
