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

#include <cstdlib>
#include <set>

#include "doctest.h"
#include "legis/common.h"
#include "legis/config.h"
#include "legis/tensor_io.h"
#include "support.h"

using namespace legis;
using legis::testing::TempDir;

TEST_CASE("dates parse, print and order") {
  Date d = Date::Parse("2011-03-04");
  CHECK(d.ToString() == "2011-03-04");
  CHECK(Date::Parse("2011-03-04T10:00:00Z") == d);
  CHECK(d.AddDays(30).ToString() == "2011-04-03");
  CHECK(d < d.AddDays(1));
  CHECK_THROWS_AS(Date::Parse("2011-13-01"), Error);
  CHECK_THROWS_AS(Date::Parse("yesterday"), Error);
}

TEST_CASE("congress numbers follow the January 3rd boundary") {
  CHECK(Date(2011, 1, 3).CongressNumber() == 112);
  CHECK(Date(2012, 12, 31).CongressNumber() == 112);
  CHECK(Date(2013, 1, 2).CongressNumber() == 112);
  CHECK(Date(2013, 1, 3).CongressNumber() == 113);
  CHECK(Date(2018, 6, 1).CongressNumber() == 115);
}

TEST_CASE("named substreams are reproducible and distinct") {
  Rng a = Rng::Substream(42, "trainer.shuffle");
  Rng b = Rng::Substream(42, "trainer.shuffle");
  Rng c = Rng::Substream(42, "trainer.dropout");
  std::vector<uint64_t> xa, xb, xc;
  for (int i = 0; i < 16; ++i) {
    xa.push_back(a.NextU64());
    xb.push_back(b.NextU64());
    xc.push_back(c.NextU64());
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
}

TEST_CASE("rng draws stay in range") {
  Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    double u = r.Uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.Below(7) < 7u);
  }
  std::vector<int> v{1, 2, 3, 4, 5, 6};
  r.Shuffle(v);
  CHECK(std::multiset<int>(v.begin(), v.end()) == std::multiset<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("config defaults, files, environment and unknown keys") {
  Config c;
  CHECK(c.GetDouble("learning_rate") == doctest::Approx(1e-4));
  CHECK(c.GetInt("batch_size") == 64);
  CHECK(c.GetInt("max_epochs") == 8);

  TempDir dir;
  WriteFile(dir / "c.toml", "# run\nlearning_rate = 5e-3\ncorpus = \"data/x\"  # trailing\n");
  c.MergeFile(dir / "c.toml");
  CHECK(c.GetDouble("learning_rate") == doctest::Approx(5e-3));
  CHECK(c.GetString("corpus") == "data/x");

  setenv("LEGISRGCN_BATCH_SIZE", "16", 1);
  c.ApplyEnvironment();
  unsetenv("LEGISRGCN_BATCH_SIZE");
  CHECK(c.GetInt("batch_size") == 16);

  CHECK_THROWS_AS(c.Set("learnin_rate", "1"), Error);
  WriteFile(dir / "bad.toml", "no_such_key = 1\n");
  CHECK_THROWS_AS(c.MergeFile(dir / "bad.toml"), Error);
  c.Set("batch_size", "many");
  CHECK_THROWS_AS(c.GetInt("batch_size"), Error);
}

TEST_CASE("config dump reads back to the same values") {
  Config c;
  c.Set("corpus", "some/dir");
  c.Set("lambda_auth", "0.25");
  TempDir dir;
  WriteFile(dir / "echo.toml", c.Dump());
  Config back = Config::FromFile(dir / "echo.toml");
  CHECK(back.values() == c.values());
}

TEST_CASE("tensor files round-trip bit-identically") {
  TempDir dir;
  Rng rng(9);
  TensorMap t;
  t["a"] = Matrix::NullaryExpr(3, 4, [&] { return rng.Normal(); });
  t["layer1.b"] = Matrix::NullaryExpr(5, 1, [&] { return rng.Normal() * 1e-300; });
  SaveTensors(dir / "t.bin", t);
  TensorMap back = LoadTensors(dir / "t.bin");
  REQUIRE(back.size() == 2);
  for (const auto& [name, m] : t) {
    REQUIRE(back.at(name).rows() == m.rows());
    REQUIRE(back.at(name).cols() == m.cols());
    CHECK(std::memcmp(back.at(name).data(), m.data(), sizeof(double) * size_t(m.size())) == 0);
  }
}

TEST_CASE("embedding cache stores f32 rows by key") {
  TempDir dir;
  EmbeddingTable table(3);
  table.Put("hr1-112", Vector::Constant(3, 0.1));
  table.Put("hr2-112", Vector::LinSpaced(3, -1, 1));
  table.Save(dir / "e.bin");
  EmbeddingTable back = EmbeddingTable::Load(dir / "e.bin");
  CHECK(back.width() == 3);
  CHECK(back.keys() == std::vector<std::string>{"hr1-112", "hr2-112"});
  CHECK(back.Get("hr1-112")[0] == double(0.1f));
  CHECK(back.Get("hr2-112")[2] == 1.0);
  CHECK_THROWS_AS(back.Get("hr3-112"), Error);
  CHECK_THROWS_AS(table.Put("bad", Vector::Zero(4)), Error);
}

TEST_CASE("corrupt binary files are schema errors") {
  TempDir dir;
  WriteFile(dir / "junk.bin", "not a tensor file");
  try {
    LoadTensors(dir / "junk.bin");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchema);
  }
  CHECK_THROWS_AS(EmbeddingTable::Load(dir / "junk.bin"), Error);
}

TEST_CASE("file digests are sha-256") {
  TempDir dir;
  WriteFile(dir / "abc.txt", "abc");
  CHECK(FileDigest(dir / "abc.txt") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
