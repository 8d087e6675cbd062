#include "dmdc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dmdc {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

}  // namespace

void write_ensemble_csv(std::ostream& out, const SeriesEnsemble& ensemble) {
  out << "series_id,t,dim,re,im\n";
  out.precision(17);
  for (std::size_t i = 0; i < ensemble.series.size(); ++i) {
    const auto& s = ensemble.series[i];
    for (Eigen::Index t = 0; t < s.cols(); ++t)
      for (Eigen::Index k = 0; k < s.rows(); ++k)
        out << (i + 1) << ',' << t << ',' << (k + 1) << ','
            << s(k, t).real() << ',' << s(k, t).imag() << '\n';
  }
}

SeriesEnsemble read_ensemble_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty ensemble CSV");

  struct Sample { int t, dim; Complex value; };
  std::map<int, std::vector<Sample>> by_series;
  int row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty()) continue;
    std::istringstream ss(line);
    int id, t, dim;
    double re, im;
    char c1, c2, c3, c4;
    if (!(ss >> id >> c1 >> t >> c2 >> dim >> c3 >> re >> c4 >> im) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
      throw std::runtime_error("malformed ensemble CSV at row " + std::to_string(row_number));
    by_series[id].push_back({t, dim, Complex(re, im)});
  }
  if (by_series.empty()) throw std::runtime_error("ensemble CSV has no data rows");

  SeriesEnsemble ens;
  for (auto& [id, samples] : by_series) {
    int max_t = 0, max_dim = 0;
    for (const auto& s : samples) {
      max_t = std::max(max_t, s.t);
      max_dim = std::max(max_dim, s.dim);
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(max_dim, max_t + 1);
    for (const auto& s : samples) m(s.dim - 1, s.t) = s.value;
    ens.series.push_back(std::move(m));
  }
  return ens;
}

void write_ensemble_csv(const std::string& path, const SeriesEnsemble& ensemble) {
  auto out = open_out(path);
  write_ensemble_csv(out, ensemble);
}

SeriesEnsemble read_ensemble_csv(const std::string& path) {
  auto in = open_in(path);
  return read_ensemble_csv(in);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << "# rows=" << m.rows() << " cols=" << m.cols() << '\n';
  out << "row,col,re,im\n";
  out.precision(17);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      out << r << ',' << c << ',' << m(r, c).real() << ',' << m(r, c).imag() << '\n';
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& m) {
  auto out = open_out(path);
  write_matrix_csv(out, m);
}

Eigen::MatrixXcd read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty matrix CSV");
  Eigen::Index rows = 0, cols = 0;
  if (std::sscanf(line.c_str(), "# rows=%td cols=%td", &rows, &cols) != 2)
    throw std::runtime_error("matrix CSV missing shape header");
  std::getline(in, line);  // column header

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Eigen::Index r, c;
    double re, im;
    if (std::sscanf(line.c_str(), "%td,%td,%lf,%lf", &r, &c, &re, &im) != 4)
      throw std::runtime_error("malformed matrix CSV row");
    m(r, c) = Complex(re, im);
  }
  return m;
}

void write_pgm(const std::string& path, const Eigen::MatrixXd& pixels) {
  auto out = open_out(path);
  out << "P5\n" << pixels.cols() << ' ' << pixels.rows() << "\n255\n";
  for (Eigen::Index y = 0; y < pixels.rows(); ++y)
    for (Eigen::Index x = 0; x < pixels.cols(); ++x) {
      const double v = std::clamp(pixels(y, x), 0.0, 1.0);
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
}

GrainImage read_pgm(const std::string& path) {
  auto in = open_in(path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw std::runtime_error("not a binary PGM (P5) file: " + path);

  auto next_token = [&in]() {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw std::runtime_error("truncated PGM header");
  };
  const int width = std::stoi(next_token());
  const int height = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (width < 1 || height < 1 || maxval != 255)
    throw std::runtime_error("unsupported PGM: expected 8-bit data");
  in.get();  // single whitespace after maxval

  GrainImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(height, width);
  std::vector<char> row(static_cast<std::size_t>(width));
  for (int y = 0; y < height; ++y) {
    in.read(row.data(), width);
    if (!in) throw std::runtime_error("truncated PGM data");
    for (int x = 0; x < width; ++x)
      img.pixels(y, x) = static_cast<unsigned char>(row[static_cast<std::size_t>(x)]) / 255.0;
  }
  return img;
}

void write_dendrogram_csv(const std::string& path, const Dendrogram& dendrogram) {
  auto out = open_out(path);
  out << "step,cluster_a,cluster_b,cost,new_size\n";
  out.precision(17);
  for (std::size_t t = 0; t < dendrogram.merges.size(); ++t) {
    const auto& m = dendrogram.merges[t];
    out << t << ',' << m.cluster_a << ',' << m.cluster_b << ',' << m.cost << ','
        << m.new_size << '\n';
  }
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  auto out = open_out(path);
  out << "item_id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << (i + 1) << ',' << labels[i] << '\n';
}

void write_label_map_csv(const std::string& path, const Eigen::MatrixXi& map) {
  auto out = open_out(path);
  out << "i,j,label\n";
  for (Eigen::Index y = 0; y < map.rows(); ++y)
    for (Eigen::Index x = 0; x < map.cols(); ++x)
      out << x << ',' << y << ',' << map(y, x) << '\n';
}

}  // namespace dmdc
