#ifndef DPPDESIGN_IO_HPP
#define DPPDESIGN_IO_HPP

#include "dppdesign/candidates.hpp"
#include "dppdesign/design.hpp"

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dppdesign {

/// Shortest form that round-trips: printf "%.17g".
std::string format_double(double x);

/// Candidate CSV: header x1,...,xd, one point per row.
CandidateSet read_candidates_csv(const std::filesystem::path &path);
void write_candidates_csv(std::ostream &out, const CandidateSet &candidates);

/// Design CSV: header index,x1,...,xd.
void write_design_csv(std::ostream &out, const Design &design);
void write_design_csv(const std::filesystem::path &path, const Design &design);

struct DesignTable {
  std::vector<Index> indices;
  Eigen::MatrixXd coords;
};

DesignTable read_design_csv(const std::filesystem::path &path);

/// Columns of equal length under the given header names.
void write_columns_csv(std::ostream &out, const std::vector<std::string> &names,
                       const std::vector<Eigen::VectorXd> &columns);

} // namespace dppdesign

#endif // DPPDESIGN_IO_HPP
