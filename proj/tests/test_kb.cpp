#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "causalkb/core/error.hpp"
#include "causalkb/kb/evidence.hpp"
#include "scratch.hpp"

using namespace causalkb;

namespace {

const VertexSet kGenes({"g1", "g2", "g3", "g4"});

kb::KbEvidence load(std::string_view contents, std::optional<double> scale = kb::kDefaultScaleMax) {
  scratch::Dir dir("kb");
  const auto path = dir / "affinity.tsv";
  scratch::write_file(path, contents);
  return kb::load_affinities(path, kGenes, scale);
}

}  // namespace

TEST(LoadAffinities, DuplicatePairsKeepMaximum) {
  const auto kb = load("g1\tg2\t800\ng2\tg1\t600\n");
  ASSERT_EQ(kb.affinities.size(), 1u);
  EXPECT_EQ(kb.affinities.at({0, 1}), 800.0);
}

TEST(LoadAffinities, UnknownGeneIsSkippedAndCounted) {
  const auto kb = load("# geneA geneB score\ng1 g9 500\ng3 g4 200\n");
  EXPECT_EQ(kb.skipped_rows, 1u);
  EXPECT_EQ(kb.affinities.size(), 1u);
  EXPECT_EQ(kb.affinities.at({2, 3}), 200.0);
}

TEST(LoadAffinities, EmptyFileGivesNoTextAdj) {
  const auto kb = load("");
  EXPECT_TRUE(kb.affinities.empty());
  EXPECT_TRUE(kb::to_textadj(kb).empty());
}

TEST(LoadAffinities, MalformedRowsAreErrors) {
  EXPECT_THROW(load("g1\tg2\n"), FormatError);
  EXPECT_THROW(load("g1\tg2\tlots\n"), FormatError);
  EXPECT_THROW(load("g1\tg2\t-3\n"), FormatError);
}

TEST(LoadAffinities, UnreadableFile) {
  EXPECT_THROW(kb::load_affinities("/nonexistent/affinity.tsv", kGenes), IoError);
}

TEST(LoadAffinities, FileMaxScale) {
  const auto kb = load("g1 g2 400\ng2 g3 200\n", std::nullopt);
  EXPECT_EQ(kb.scale_max, 400.0);
  const auto atoms = kb::to_textadj(kb);
  ASSERT_EQ(atoms.size(), 2u);
  EXPECT_EQ(atoms[0].truth, 1.0);
  EXPECT_EQ(atoms[1].truth, 0.5);
}

TEST(LoadAffinities, OrderIndependent) {
  std::vector<std::string> rows{"g1\tg2\t10", "g2\tg1\t30", "g3\tg4\t700", "g4\tg1\t1", "g2\tg3\t0"};
  const auto join = [](const std::vector<std::string>& r) {
    std::string s;
    for (const auto& line : r) s += line + "\n";
    return s;
  };
  const auto reference = load(join(rows));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto again = load(join(rows));
    EXPECT_EQ(again.affinities, reference.affinities);
  }
}

TEST(ToTextAdj, LinearRescaleClampAndClosedWorld) {
  kb::KbEvidence kb;
  kb.affinities = {{{0, 1}, 800.0}, {{1, 2}, 1200.0}, {{2, 3}, 0.0}};
  const auto atoms = kb::to_textadj(kb);
  ASSERT_EQ(atoms.size(), 2u);
  EXPECT_EQ(atoms[0].predicate, Predicate::TextAdj);
  EXPECT_DOUBLE_EQ(atoms[0].truth, 0.8);
  EXPECT_EQ(atoms[1].truth, 1.0);
}

TEST(ToTextAdj, MonotoneInRawScore) {
  kb::KbEvidence kb;
  for (Vertex a = 0; a < 10; ++a) kb.affinities[{a, a + 1}] = 150.0 * a + 1.0;
  const auto atoms = kb::to_textadj(kb);
  for (std::size_t i = 1; i < atoms.size(); ++i) EXPECT_GE(atoms[i].truth, atoms[i - 1].truth);
}

TEST(ToTextAdj, NonPositiveScaleIsError) {
  kb::KbEvidence kb;
  kb.scale_max = 0.0;
  EXPECT_THROW(kb::to_textadj(kb), InvalidArgument);
}

TEST(LoadPpi, EdgesDeduplicatedAndUnknownSkipped) {
  scratch::Dir dir("ppi");
  const auto path = dir / "ppi.tsv";
  scratch::write_file(path, "# a b\ng1\tg2\ng2\tg1\ng1\tg2\ng5\tg1\n");
  const auto ppi = kb::load_ppi(path, kGenes);
  ASSERT_EQ(ppi.atoms.size(), 1u);
  EXPECT_EQ(ppi.atoms[0].predicate, Predicate::LocalPPI);
  EXPECT_EQ(ppi.atoms[0].a, 0u);
  EXPECT_EQ(ppi.atoms[0].b, 1u);
  EXPECT_EQ(ppi.atoms[0].truth, 1.0);
  EXPECT_EQ(ppi.skipped_rows, 1u);
  scratch::write_file(path, "g1\tg2\tg3\n");
  EXPECT_THROW(kb::load_ppi(path, kGenes), FormatError);
}

TEST(WriteAffinities, RoundTrips) {
  kb::KbEvidence kb;
  kb.affinities = {{{0, 3}, 512.25}, {{1, 2}, 999.0}};
  std::ostringstream out;
  kb::write_affinities_tsv(out, kb, kGenes);
  EXPECT_EQ(load(out.str()).affinities, kb.affinities);
}
