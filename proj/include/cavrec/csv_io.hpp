#pragma once

// CSV import/export: Cauchy data (with the run parameters in a comment
// header), curve samplings, and iteration history. Doubles are printed
// with %.17g so files round-trip bit-exactly.

#include <filesystem>
#include <vector>

#include "cavrec/forward_solver.hpp"
#include "cavrec/inverse_solver.hpp"

namespace cavrec {

void write_cauchy_csv(const std::filesystem::path& path, const CauchyData& data);
CauchyData read_cauchy_csv(const std::filesystem::path& path);

// columns s, x1, x2
void write_curve_csv(const std::filesystem::path& path, const Curve& curve, int samples);

// columns iteration, lambda, residual, update_norm, q0..q2J
void write_history_csv(const std::filesystem::path& path,
                       const std::vector<IterationRecord>& history);

} // namespace cavrec
