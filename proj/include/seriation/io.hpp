#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "seriation/duplication.hpp"
#include "seriation/permutation.hpp"
#include "seriation/similarity_matrix.hpp"

namespace seriation {

/// Similarity file: first line `n count`, then `count` lines `i j value`
/// (0-based). Zero values are skipped; malformed lines raise ParseError with
/// their 1-based line number.
SimilarityMatrix read_similarity(std::istream& in);
SimilarityMatrix read_similarity(const std::filesystem::path& path);
void write_similarity(std::ostream& out, const SimilarityMatrix& a);
void write_similarity(const std::filesystem::path& path, const SimilarityMatrix& a);

/// One 0-based position per line: line i holds the position of element i.
Permutation read_permutation(std::istream& in);
Permutation read_permutation(const std::filesystem::path& path);
void write_permutation(std::ostream& out, const Permutation& p);
void write_permutation(const std::filesystem::path& path, const Permutation& p);

/// One positive count per line.
DuplicationCounts read_counts(std::istream& in);
DuplicationCounts read_counts(const std::filesystem::path& path);
void write_counts(std::ostream& out, const DuplicationCounts& c);
void write_counts(const std::filesystem::path& path, const DuplicationCounts& c);

/// Line i lists the fragment positions of bin i, space separated.
AssignmentMatrix read_assignment(std::istream& in);
AssignmentMatrix read_assignment(const std::filesystem::path& path);
void write_assignment(std::ostream& out, const AssignmentMatrix& z);
void write_assignment(const std::filesystem::path& path, const AssignmentMatrix& z);

/// Dense matrix: first line `rows cols`, then one row per line.
Eigen::MatrixXd read_dense(std::istream& in);
Eigen::MatrixXd read_dense(const std::filesystem::path& path);
void write_dense(std::ostream& out, const Eigen::MatrixXd& m);
void write_dense(const std::filesystem::path& path, const Eigen::MatrixXd& m);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace seriation
