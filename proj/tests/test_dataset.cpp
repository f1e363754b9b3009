#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "mri/dataset.hpp"
#include "mri/rng.hpp"
#include "temp_dir.hpp"

using namespace mri;

TEST_SUITE("dataset") {

TEST_CASE("two-gaussian draws equal class halves") {
  const Dataset d = generate_two_gaussian(4, 11);
  CHECK(d.size() == 4);
  CHECK(d.classes() == 2);
  CHECK(d.class_counts() == std::vector<std::size_t>{2, 2});

  const Dataset empty = generate_two_gaussian(0, 11);
  CHECK(empty.empty());
  CHECK(empty.classes() == 2);

  CHECK_THROWS_AS(generate_two_gaussian(5, 1), DataError);
}

TEST_CASE("two-gaussian class means match the generator") {
  const Dataset d = generate_two_gaussian(100000, 3);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) (d.label(i) == 1 ? s1 : s2) += d.row(i)[0];
  CHECK(std::abs(s1 / 50000.0 + 1.0) < 0.02);
  CHECK(std::abs(s2 / 50000.0 - 1.0) < 0.02);
}

TEST_CASE("abstract problems: balanced prior, Bayes error near 0.1") {
  for (const auto& name : abstract_problem_names()) {
    CAPTURE(name);
    CHECK(generate_abstract_problem(name, 0, 1).empty());

    const Problem p = make_problem(name);
    CHECK(p.dim == 2);
    CHECK(std::abs(p.prior[0] + p.prior[1] - 1.0) < 1e-12);
    const Dataset d = p.sample(100000, 5);
    const auto counts = d.class_counts();
    CHECK(std::abs(double(counts[0]) / 1e5 - 0.5) < 0.01);
    // chi-square with one degree of freedom, alpha = 0.001
    const double e = 50000.0;
    const double chi2 = (counts[0] - e) * (counts[0] - e) / e + (counts[1] - e) * (counts[1] - e) / e;
    CHECK(chi2 < 10.828);

    std::size_t wrong = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const auto post = p.posterior(d.row(i));
      CHECK(std::abs(post[0] + post[1] - 1.0) < 1e-12);
      const Label bayes = post[0] >= post[1] ? 1 : 2;
      wrong += bayes != d.label(i);
    }
    CHECK(std::abs(double(wrong) / 1e5 - 0.1) < 0.02);
  }
}

TEST_CASE("generators are deterministic in the seed") {
  const Dataset a = generate_abstract_problem(kFourGaussian, 50, 9);
  const Dataset b = generate_abstract_problem(kFourGaussian, 50, 9);
  const Dataset c = generate_abstract_problem(kFourGaussian, 50, 10);
  CHECK(a.values() == b.values());
  CHECK(a.labels() == b.labels());
  CHECK(a.values() != c.values());
  CHECK_THROWS(generate_abstract_problem("no-such-problem", 10, 1));
  CHECK_THROWS(make_problem("no-such-problem"));
}

TEST_CASE("load_csv encodes labels and reports each failure mode") {
  TempDir dir;
  const auto path = dir.file("small.csv", "a,b,class\n1,2,yes\n3,4,no\n5,6,yes\n");
  const Dataset d = load_csv(path);
  CHECK(d.size() == 3);
  CHECK(d.dim() == 2);
  CHECK(d.classes() == 2);
  CHECK(d.labels() == std::vector<Label>{2, 1, 2});  // "no" < "yes"

  const auto numeric = dir.file("numeric.csv", "x,class\n0.5,10\n0.1,9\n0.2,10\n");
  CHECK(load_csv(numeric).labels() == std::vector<Label>{2, 1, 2});

  try {
    load_csv(path, "target");
    FAIL("expected an error");
  } catch (const CsvMissingColumnError& e) {
    CHECK(std::string(e.what()).find("target") != std::string::npos);
  }
  CHECK_THROWS_AS(load_csv(dir.file("bad.csv", "a,class\n1,x\nfoo,y\n")), CsvNonNumericError);
  CHECK_THROWS_AS(load_csv(dir.file("empty.csv", "")), CsvEmptyError);
}

TEST_CASE("write_csv then load_csv reproduces covariates bit-exactly") {
  TempDir dir;
  Dataset d(3, 3);
  Rng rng = make_rng(4);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> x{normal01(rng) * 1e-7, normal01(rng) * 1e9, uniform01(rng) / 3.0};
    d.append(x, 1 + i % 3);
  }
  const auto path = dir.path() / "round.csv";
  write_csv(d, path.string());
  const Dataset back = load_csv(path.string());
  CHECK(back.values() == d.values());
  CHECK(back.labels() == d.labels());

  const Dataset bare = Dataset::unlabelled(1, 2, {0.5, 1.5});
  CHECK_THROWS_AS(write_csv(bare, (dir.path() / "bare.csv").string()), CsvError);
  CHECK_FALSE(std::filesystem::exists(dir.path() / "bare.csv"));
}

TEST_CASE("make_split partitions and covers classes") {
  const Dataset d = generate_abstract_problem(kFourGaussian, 200, 2);
  const Split s = make_split(d, 2, 60, 100, 17);
  CHECK(s.initial.size() == 2);
  CHECK(s.pool.size() == 60);
  CHECK(s.test.size() == 100);
  CHECK(s.initial.class_counts() == std::vector<std::size_t>{1, 1});

  std::set<std::size_t> all;
  for (const auto* idx : {&s.initial_index, &s.pool_index, &s.test_index}) all.insert(idx->begin(), idx->end());
  CHECK(all.size() == 162);

  const Split again = make_split(d, 2, 60, 100, 17);
  CHECK(again.initial_index == s.initial_index);
  CHECK(again.pool_index == s.pool_index);
  CHECK(again.test_index == s.test_index);
  CHECK(s.pool.labelled());  // hidden labels kept for the oracle

  CHECK_THROWS(make_split(d, 2, 100, 99, 1));
  CHECK_THROWS(make_split(d, 1, 10, 10, 1));
}

}
