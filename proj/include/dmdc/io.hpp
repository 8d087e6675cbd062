#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "dmdc/clustering.hpp"
#include "dmdc/signal_model.hpp"

namespace dmdc {

/// Ensemble CSV: header `series_id,t,dim,re,im`, one row per component
/// sample. Labels are not serialized.
void write_ensemble_csv(std::ostream& out, const SeriesEnsemble& ensemble);
SeriesEnsemble read_ensemble_csv(std::istream& in);

void write_ensemble_csv(const std::string& path, const SeriesEnsemble& ensemble);
SeriesEnsemble read_ensemble_csv(const std::string& path);

/// Matrix dump: `# rows=R cols=C` then `row,col,re,im` rows in column-major
/// order.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd read_matrix_csv(std::istream& in);

/// Binary PGM (P5), 8-bit; brightness maps linearly to [0, 1].
void write_pgm(const std::string& path, const Eigen::MatrixXd& pixels);
GrainImage read_pgm(const std::string& path);

/// Dendrogram CSV: `step,cluster_a,cluster_b,cost,new_size`.
void write_dendrogram_csv(const std::string& path, const Dendrogram& dendrogram);

/// Labels CSV: `item_id,label` (1-based ids).
void write_labels_csv(const std::string& path, const std::vector<int>& labels);

/// Label map CSV: `i,j,label` over all pixels.
void write_label_map_csv(const std::string& path, const Eigen::MatrixXi& map);

}  // namespace dmdc
