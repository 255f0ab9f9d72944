// Copyright 2026 The legisrgcn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "legis/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>

namespace legis {
namespace {

std::string Format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double Quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  double pos = q * double(sorted.size() - 1);
  size_t lo = size_t(std::floor(pos));
  size_t hi = std::min(sorted.size() - 1, lo + 1);
  return sorted[lo] + (pos - double(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double Cosine(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) Fail(ErrorCode::kDimensionMismatch, "cosine of vectors of different width");
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

std::vector<SimilarityRecord> SimilarityAnalysis(const Matrix& reps, const HeteroGraph& graph,
                                                 const Corpus& corpus, const SplitAssignment& split,
                                                 Split which) {
  std::vector<SimilarityRecord> out;
  for (size_t i = 0; i < corpus.cosponsorships.size(); ++i) {
    if (split.cosponsorships[i] != which) continue;
    const auto& c = corpus.cosponsorships[i];
    const Bill& bill = corpus.GetBill(c.bill_id);
    Vector l = reps.row(graph.Get(NodeType::kLegislator, c.legislator_id)).transpose();
    Vector s = reps.row(graph.Get(NodeType::kLegislator, bill.sponsor_id)).transpose();
    Vector b = reps.row(graph.Get(NodeType::kBill, c.bill_id)).transpose();
    out.push_back({c.legislator_id, c.bill_id, bill.sponsor_id, Cosine(l, s), Cosine(l, b), c.kind});
  }
  return out;
}

std::string SimilarityCsv(const std::vector<SimilarityRecord>& records) {
  std::string out = "legislator_id,bill_id,sponsor_id,kind,cos_sponsor,cos_bill\n";
  for (const auto& r : records) {
    out += r.legislator_id + "," + r.bill_id + "," + r.sponsor_id + "," + KindName(r.kind) + "," +
           Format(r.to_sponsor) + "," + Format(r.to_bill) + "\n";
  }
  return out;
}

double SilvermanBandwidth(const std::vector<double>& values) {
  const size_t n = values.size();
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "density of an empty sample");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= double(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  double sd = n > 1 ? std::sqrt(var / double(n - 1)) : 0.0;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  double iqr = Quantile(sorted, 0.75) - Quantile(sorted, 0.25);
  double spread = iqr > 0 ? std::min(sd, iqr / 1.34) : sd;
  double scale = std::pow(double(n), -0.2);
  if (spread > 0) return 0.9 * spread * scale;
  return 1e-3;
}

Density GaussianKde(const std::vector<double>& values) {
  Density d;
  d.bandwidth = SilvermanBandwidth(values);
  const double h = d.bandwidth;
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it - 5 * h, hi = *hi_it + 5 * h;
  size_t points = std::max<size_t>(512, size_t(std::ceil((hi - lo) / (h / 4.0))) + 1);
  points = std::min<size_t>(points, 1 << 20);
  const double step = (hi - lo) / double(points - 1);
  const double norm = 1.0 / (double(values.size()) * h * std::sqrt(2.0 * M_PI));
  d.x.resize(points);
  d.y.assign(points, 0.0);
  for (size_t i = 0; i < points; ++i) {
    const double x = lo + step * double(i);
    d.x[i] = x;
    double sum = 0.0;
    for (double v : values) {
      double u = (x - v) / h;
      if (std::abs(u) < 40) sum += std::exp(-0.5 * u * u);
    }
    d.y[i] = sum * norm;
  }
  return d;
}

double Integrate(const Density& d) {
  double total = 0.0;
  for (size_t i = 1; i < d.x.size(); ++i) total += 0.5 * (d.y[i] + d.y[i - 1]) * (d.x[i] - d.x[i - 1]);
  return total;
}

std::map<std::string, Density> SimilarityDensities(const std::vector<SimilarityRecord>& records) {
  std::map<std::string, std::vector<double>> groups;
  for (const auto& r : records) {
    std::string kind = KindName(r.kind);
    groups[kind + "_sponsor"].push_back(r.to_sponsor);
    groups[kind + "_bill"].push_back(r.to_bill);
  }
  std::map<std::string, Density> out;
  for (const auto& [name, values] : groups) out[name] = GaussianKde(values);
  return out;
}

std::string DensityCsv(const std::map<std::string, Density>& densities) {
  std::string out = "group,x,density\n";
  for (const auto& [name, d] : densities) {
    for (size_t i = 0; i < d.x.size(); ++i) out += name + "," + Format(d.x[i]) + "," + Format(d.y[i]) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projections

Matrix PcaProjector::Project(const Matrix& x) const {
  const Eigen::Index n = x.rows();
  Matrix out = Matrix::Zero(n, 2);
  if (n < 2 || x.cols() == 0) return out;
  Matrix centered = x.rowwise() - x.colwise().mean();
  Matrix cov = centered.transpose() * centered / double(n - 1);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  const Eigen::Index d = cov.rows();
  for (int k = 0; k < 2 && k < d; ++k) {
    Vector axis = eig.eigenvectors().col(d - 1 - k);  // eigenvalues ascend
    Eigen::Index arg;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis[arg] < 0) axis = -axis;
    out.col(k) = centered * axis;
  }
  return out;
}

Matrix TsneProjector::Project(const Matrix& x) const {
  const Eigen::Index n = x.rows();
  if (n < 3) Fail(ErrorCode::kInvalidArgument, "projection needs at least three points");

  // Squared distances.
  Vector sq = x.rowwise().squaredNorm();
  Matrix dist = (sq.replicate(1, n) + sq.transpose().replicate(n, 1) - 2.0 * x * x.transpose())
                    .cwiseMax(0.0);

  // Conditional affinities with a per-point precision matched to the
  // target perplexity.
  const double perplexity = std::max(1.0, std::min(perplexity_, double(n - 1) / 3.0));
  const double target = std::log(perplexity);
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double beta = 1.0, lo = -1.0, hi = -1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double sum = 0.0, weighted = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        double v = std::exp(-beta * dist(i, j));
        p(i, j) = v;
        sum += v;
        weighted += v * dist(i, j);
      }
      if (sum <= 0) sum = 1e-300;
      double entropy = std::log(sum) + beta * weighted / sum;
      p.row(i) /= sum;
      double diff = entropy - target;
      if (std::abs(diff) < 1e-5) break;
      if (diff > 0) {
        lo = beta;
        beta = hi < 0 ? beta * 2 : 0.5 * (beta + hi);
      } else {
        hi = beta;
        beta = lo < 0 ? beta / 2 : 0.5 * (beta + lo);
      }
    }
  }
  Matrix pj = ((p + p.transpose()) / (2.0 * double(n))).cwiseMax(1e-12);
  for (Eigen::Index i = 0; i < n; ++i) pj(i, i) = 0.0;

  Matrix y = PcaProjector().Project(x);
  double sd = std::sqrt((y.col(0).array() - y.col(0).mean()).square().sum() / double(n));
  y = sd > 0 ? Matrix(y / sd * 1e-4) : Matrix(Matrix::Zero(n, 2));

  Matrix update = Matrix::Zero(n, 2), gains = Matrix::Ones(n, 2);
  const double lr = std::max(double(n) / 12.0 / 4.0, 50.0);
  const int exaggeration_steps = std::min(250, iterations_ / 3);
  for (int it = 0; it < iterations_; ++it) {
    const double exaggeration = it < exaggeration_steps ? 12.0 : 1.0;
    const double momentum = it < exaggeration_steps ? 0.5 : 0.8;
    Vector ysq = y.rowwise().squaredNorm();
    Matrix num = (1.0 + (ysq.replicate(1, n) + ysq.transpose().replicate(n, 1) -
                         2.0 * y * y.transpose()).array().cwiseMax(0.0)).inverse().matrix();
    for (Eigen::Index i = 0; i < n; ++i) num(i, i) = 0.0;
    const double qsum = std::max(num.sum(), 1e-300);
    Matrix coeff = ((exaggeration * pj).array() - (num / qsum).array().max(1e-12)) * num.array();
    for (Eigen::Index i = 0; i < n; ++i) coeff(i, i) = 0.0;
    Matrix grad = 4.0 * (coeff.rowwise().sum().asDiagonal() * y - coeff * y);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int k = 0; k < 2; ++k) {
        bool same = (grad(i, k) > 0) == (update(i, k) > 0);
        gains(i, k) = std::max(0.01, same ? gains(i, k) * 0.8 : gains(i, k) + 0.2);
      }
    }
    update = momentum * update - lr * gains.cwiseProduct(grad);
    y += update;
  }
  return y;
}

std::unique_ptr<Projector> MakeProjector(const std::string& name, double perplexity, int iterations) {
  if (name == "tsne") return std::make_unique<TsneProjector>(perplexity, iterations);
  if (name == "pca") return std::make_unique<PcaProjector>();
  Fail(ErrorCode::kInvalidArgument, "unknown projection '" + name + "' (expected tsne or pca)");
}

std::string ProjectLegislators(const Matrix& reps, const HeteroGraph& graph, const Corpus& corpus,
                               const Projector& projector) {
  const size_t n = corpus.legislators.size();
  if (n < 3) Fail(ErrorCode::kInvalidArgument, "projection needs at least three legislators");
  Matrix x(Eigen::Index(n), reps.cols());
  for (size_t i = 0; i < n; ++i) {
    x.row(Eigen::Index(i)) = reps.row(graph.Get(NodeType::kLegislator, corpus.legislators[i].bioguide_id));
  }
  Matrix coords = projector.Project(x);
  std::string out = "bioguide_id,x,y,party\n";
  for (size_t i = 0; i < n; ++i) {
    out += corpus.legislators[i].bioguide_id + "," + Format(coords(Eigen::Index(i), 0)) + "," +
           Format(coords(Eigen::Index(i), 1)) + "," + PartyName(corpus.legislators[i].party) + "\n";
  }
  return out;
}

}  // namespace legis
