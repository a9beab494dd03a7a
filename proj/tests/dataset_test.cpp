#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "canfis/dataset.hpp"
#include "canfis/errors.hpp"

using namespace canfis;
namespace fs = std::filesystem;

namespace {

class DatasetFiles : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("canfis_dataset_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  fs::path dir_;
};

CsvError expect_csv_error(const fs::path& p) {
  try {
    load_csv(p, Role::Train);
  } catch (const CsvError& e) {
    return e;
  }
  ADD_FAILURE() << "no CsvError for " << p;
  return CsvError(CsvError::Kind::MissingFile, 0, 0, "");
}

}  // namespace

TEST(Builtin, TrainingIsTheTruthTable) {
  const auto d = builtin_training();
  const std::vector<Sample> expected{{0, 0, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 1}};
  EXPECT_EQ(d.samples, expected);
  EXPECT_EQ(d.role, Role::Train);
}

TEST(Builtin, CrossValidationRowsVerbatim) {
  const auto d = builtin_cv();
  ASSERT_EQ(d.size(), 9u);
  EXPECT_EQ(d.samples[0], (Sample{0.05, 0.03, 0, 0}));
  EXPECT_EQ(d.samples[2], (Sample{0.06, 1.06, 1, 0}));
  EXPECT_EQ(d.samples[8], (Sample{1.04, 0.99, 0, 1}));
}

TEST(Builtin, TestRowsVerbatim) {
  const auto d = builtin_test();
  const std::vector<Sample> expected{{0.07, 0.02, 0, 0}, {0.09, 0.99, 1, 0}, {1.045, 0.03, 1, 0},
                                     {0.08, 0.01, 0, 0}, {0.98, 0.02, 1, 0},  {0.975, 0.98, 0, 1}};
  EXPECT_EQ(d.samples, expected);
}

TEST(Builtin, TargetsMatchHalfAdderOfRoundedInputs) {
  for (const auto& d : {builtin_training(), builtin_cv(), builtin_test()})
    for (const auto& s : d.samples) {
      const int a = s.x >= 0.5, b = s.y >= 0.5;
      EXPECT_EQ(s.s, a ^ b);
      EXPECT_EQ(s.c, a & b);
    }
}

TEST(Role, StringRoundTrip) {
  for (auto r : {Role::Train, Role::CrossValidation, Role::Test}) EXPECT_EQ(role_from_string(to_string(r)), r);
  EXPECT_THROW(role_from_string("validation"), ConfigError);
}

TEST(Validate, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Dataset{}.validate(), DataError);
  Dataset d{"d", Role::Train, {{0, std::numeric_limits<double>::quiet_NaN(), 0, 0}}};
  EXPECT_THROW(d.validate(), DataError);
  Dataset nb{"nb", Role::Train, {{0, 0, 0.5, 0}}};
  EXPECT_NO_THROW(nb.validate());
  EXPECT_THROW(nb.validate_binary(), DataError);
}

TEST_F(DatasetFiles, SaveLoadRoundTripIsExact) {
  for (const auto& d : {builtin_training(), builtin_cv(), builtin_test()}) {
    const auto p = dir_ / (d.name + ".csv");
    save_csv(d, p);
    const auto back = load_csv(p, d.role);
    EXPECT_EQ(back.samples, d.samples);
    EXPECT_EQ(back.name, d.name);
  }
}

TEST_F(DatasetFiles, ToleratesWhitespaceAndCrlf) {
  const auto d = load_csv(write("ws.csv", "X,Y,S,C\r\n 0.5 , 1,1,0\r\n\r\n1,1,0,1\r\n"), Role::Test);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.samples[0], (Sample{0.5, 1, 1, 0}));
}

TEST_F(DatasetFiles, HeaderMustBeExact) {
  const auto e = expect_csv_error(write("h.csv", "x,y,s,c\n0,0,0,0\n"));
  EXPECT_EQ(e.kind(), CsvError::Kind::MalformedHeader);
  EXPECT_EQ(e.row(), 1u);
  EXPECT_EQ(expect_csv_error(write("h2.csv", "X,Y,S\n0,0,0\n")).kind(), CsvError::Kind::MalformedHeader);
  EXPECT_EQ(expect_csv_error(write("h3.csv", "")).kind(), CsvError::Kind::MalformedHeader);
}

TEST_F(DatasetFiles, ParseErrorNamesRowAndColumn) {
  const auto e = expect_csv_error(write("p.csv", "X,Y,S,C\n0,abc,0,0\n"));
  EXPECT_EQ(e.kind(), CsvError::Kind::ParseError);
  EXPECT_EQ(e.row(), 2u);
  EXPECT_EQ(e.column(), 2u);
  EXPECT_NE(std::string(e.what()).find("abc"), std::string::npos);
}

TEST_F(DatasetFiles, NonFiniteAndPartialNumbersRejected) {
  EXPECT_EQ(expect_csv_error(write("n.csv", "X,Y,S,C\n0,0,0,0\nnan,0,0,0\n")).row(), 3u);
  EXPECT_EQ(expect_csv_error(write("i.csv", "X,Y,S,C\ninf,0,0,0\n")).kind(), CsvError::Kind::ParseError);
  EXPECT_EQ(expect_csv_error(write("t.csv", "X,Y,S,C\n1.5x,0,0,0\n")).column(), 1u);
}

TEST_F(DatasetFiles, WrongFieldCount) {
  const auto e = expect_csv_error(write("w.csv", "X,Y,S,C\n0,0,0,0\n1,1,0\n"));
  EXPECT_EQ(e.kind(), CsvError::Kind::WrongFieldCount);
  EXPECT_EQ(e.row(), 3u);
}

TEST_F(DatasetFiles, EmptyBody) {
  EXPECT_EQ(expect_csv_error(write("e.csv", "X,Y,S,C\n")).kind(), CsvError::Kind::EmptyBody);
}

TEST_F(DatasetFiles, MissingFile) {
  EXPECT_EQ(expect_csv_error(dir_ / "absent.csv").kind(), CsvError::Kind::MissingFile);
}
