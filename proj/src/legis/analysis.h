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

// Representation analyses: cosine similarity of cosponsors to sponsors and
// bills with kernel density export, and 2D projections of legislators.

#ifndef LEGIS_ANALYSIS_H_
#define LEGIS_ANALYSIS_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "legis/corpus.h"
#include "legis/graph.h"
#include "legis/tensor_io.h"

namespace legis {

// 0 when either vector is all zeros; otherwise clamped to [-1, 1].
double Cosine(const Vector& a, const Vector& b);

struct SimilarityRecord {
  std::string legislator_id;
  std::string bill_id;
  std::string sponsor_id;
  double to_sponsor = 0.0;
  double to_bill = 0.0;
  CosponsorKind kind = CosponsorKind::kActive;
};

// One record per cosponsorship of the chosen split, on final
// representations (rows indexed by graph node).
std::vector<SimilarityRecord> SimilarityAnalysis(const Matrix& representations,
                                                 const HeteroGraph& graph, const Corpus& corpus,
                                                 const SplitAssignment& split,
                                                 Split which = Split::kTest);

std::string SimilarityCsv(const std::vector<SimilarityRecord>& records);

struct Density {
  std::vector<double> x;
  std::vector<double> y;
  double bandwidth = 0.0;
};

// Silverman's rule: 0.9 * min(sd, IQR / 1.34) * n^(-1/5), falling back to
// sd, then to 1e-3 for constant samples.
double SilvermanBandwidth(const std::vector<double>& values);

// Gaussian kernel density on an even grid covering [min - 5h, max + 5h]
// with spacing at most h / 4 and at least 512 points.
Density GaussianKde(const std::vector<double>& values);

// Trapezoid rule over the grid.
double Integrate(const Density& density);

// Densities of to_sponsor and to_bill per cosponsorship kind. Keys are
// "<kind>_<target>", e.g. "active_sponsor". Empty groups are skipped.
std::map<std::string, Density> SimilarityDensities(const std::vector<SimilarityRecord>& records);

// Long format: "group,x,density".
std::string DensityCsv(const std::map<std::string, Density>& densities);

class Projector {
 public:
  virtual ~Projector() = default;
  virtual std::string name() const = 0;
  // Rows of x to rows of 2D coordinates.
  virtual Matrix Project(const Matrix& x) const = 0;
};

// Principal components, signs fixed so the largest loading is positive.
class PcaProjector : public Projector {
 public:
  std::string name() const override { return "pca"; }
  Matrix Project(const Matrix& x) const override;
};

// Exact t-SNE with PCA initialization; deterministic.
class TsneProjector : public Projector {
 public:
  TsneProjector(double perplexity = 30.0, int iterations = 750)
      : perplexity_(perplexity), iterations_(iterations) {}
  std::string name() const override { return "tsne"; }
  Matrix Project(const Matrix& x) const override;

 private:
  double perplexity_;
  int iterations_;
};

// "tsne" or "pca". Throws InvalidArgument.
std::unique_ptr<Projector> MakeProjector(const std::string& name, double perplexity = 30.0,
                                         int iterations = 750);

// Needs at least three legislators. Rows follow corpus.legislators order.
// CSV header "bioguide_id,x,y,party".
std::string ProjectLegislators(const Matrix& representations, const HeteroGraph& graph,
                               const Corpus& corpus, const Projector& projector);

}  // namespace legis

#endif  // LEGIS_ANALYSIS_H_
