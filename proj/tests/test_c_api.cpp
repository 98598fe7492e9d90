/*
 * Copyright 2026 The wavereg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "wavereg/wavereg.h"

namespace {

using wavereg::testing::TempDir;

std::string last_error() { return wr_last_error(); }

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(wr_version(), "");
  EXPECT_STREQ(wr_status_name(WR_OK), "ok");
  EXPECT_STREQ(wr_status_name(WR_ERR_IO), "i/o error");
  EXPECT_STREQ(wr_status_name(static_cast<wr_status>(99)), "unknown status");
  const wr_params id = wr_params_identity();
  EXPECT_EQ(id.sx, 1.0);
  EXPECT_EQ(id.tx, 0.0);
}

TEST(CApi, ImageLifecycle) {
  const std::vector<double> data{1, 2, 3, 4, 5, 6};
  wr_image* img = nullptr;
  ASSERT_EQ(wr_image_create(3, 2, data.data(), &img), WR_OK);
  EXPECT_EQ(wr_image_width(img), 3);
  EXPECT_EQ(wr_image_height(img), 2);
  std::vector<double> out(6);
  EXPECT_EQ(wr_image_copy_data(img, out.data(), out.size()), WR_OK);
  EXPECT_EQ(out, data);
  EXPECT_EQ(wr_image_copy_data(img, out.data(), 5), WR_ERR_PARAMETER);
  EXPECT_NE(last_error().find("too small"), std::string::npos);
  wr_image_free(img);
  wr_image_free(nullptr);
}

TEST(CApi, ArgumentErrors) {
  wr_image* img = nullptr;
  const double d[4] = {0, 1, 2, std::nan("")};
  EXPECT_EQ(wr_image_create(2, 2, nullptr, &img), WR_ERR_PARAMETER);
  EXPECT_EQ(wr_image_create(2, 2, d, nullptr), WR_ERR_PARAMETER);
  EXPECT_EQ(wr_image_create(2, 2, d, &img), WR_ERR_PARAMETER);
  EXPECT_NE(last_error().find("finite"), std::string::npos);
  EXPECT_EQ(img, nullptr);
  EXPECT_EQ(wr_image_create(0, 2, d, &img), WR_ERR_PARAMETER);
  EXPECT_EQ(wr_image_width(nullptr), 0);
}

TEST(CApi, IoErrorsNameThePath) {
  wr_image* img = nullptr;
  EXPECT_EQ(wr_image_load_pgm("/nonexistent/dir/x.pgm", &img), WR_ERR_IO);
  EXPECT_NE(last_error().find("/nonexistent/dir/x.pgm"), std::string::npos);

  TempDir dir("capi");
  std::ofstream(dir / "bad.pgm") << "P2\n2 2\n255\n0 0 0 0\n";
  EXPECT_EQ(wr_image_load_pgm((dir / "bad.pgm").c_str(), &img), WR_ERR_FORMAT);
  EXPECT_NE(last_error().find("magic"), std::string::npos);
}

TEST(CApi, PgmRoundTrip) {
  TempDir dir("capi");
  const std::vector<double> data{0, 128, 255, 7};
  wr_image* img = nullptr;
  ASSERT_EQ(wr_image_create(2, 2, data.data(), &img), WR_OK);
  const std::string path = (dir / "a.pgm").string();
  EXPECT_EQ(wr_image_save_pgm(img, path.c_str(), 255), WR_OK);
  EXPECT_EQ(wr_image_save_pgm(img, path.c_str(), 1000), WR_ERR_PARAMETER);
  wr_image* back = nullptr;
  ASSERT_EQ(wr_image_load_pgm(path.c_str(), &back), WR_OK);
  std::vector<double> out(4);
  wr_image_copy_data(back, out.data(), 4);
  EXPECT_EQ(out, data);
  wr_image_free(img);
  wr_image_free(back);
}

TEST(CApi, ConfigSetters) {
  wr_config* c = nullptr;
  ASSERT_EQ(wr_config_create(&c), WR_OK);
  EXPECT_EQ(wr_config_set_method(c, "wavelet"), WR_OK);
  EXPECT_EQ(wr_config_set_method(c, "demons"), WR_ERR_PARAMETER);
  EXPECT_NE(last_error().find("demons"), std::string::npos);
  EXPECT_EQ(wr_config_set_pyramid_levels(c, 0), WR_ERR_PARAMETER);
  EXPECT_EQ(wr_config_set_max_iterations(c, -1), WR_ERR_PARAMETER);
  EXPECT_EQ(wr_config_set_histogram_bins(c, 1), WR_ERR_PARAMETER);
  EXPECT_EQ(wr_config_set_subband_objective(c, "ll_only"), WR_OK);
  EXPECT_EQ(wr_config_set_subband_objective(c, "hh"), WR_ERR_PARAMETER);
  wr_params bad = wr_params_identity();
  bad.sy = 0;
  EXPECT_EQ(wr_config_set_initial(c, &bad), WR_ERR_PARAMETER);
  const int mask[6] = {1, 1, 0, 0, 0, 0};
  EXPECT_EQ(wr_config_set_parameter_mask(c, mask), WR_OK);
  EXPECT_EQ(wr_config_set_method(nullptr, "pyramid"), WR_ERR_PARAMETER);
  wr_config_free(c);
}

TEST(CApi, FixtureRegisterAndWrite) {
  wr_fixture_spec spec = wr_fixture_spec_default();
  spec.size = 96;
  spec.truth.tx = 4;
  spec.truth.ty = -2;
  spec.remap = "invert";
  spec.noise_sigma = 0.01;
  spec.seed = 3;
  wr_image *fixed = nullptr, *moving = nullptr;
  ASSERT_EQ(wr_fixture_generate(&spec, &fixed, &moving), WR_OK) << last_error();

  wr_config* c = nullptr;
  ASSERT_EQ(wr_config_create(&c), WR_OK);
  ASSERT_EQ(wr_config_set_method(c, "pyramid"), WR_OK);
  ASSERT_EQ(wr_config_set_seed(c, 11), WR_OK);
  wr_result* r = nullptr;
  ASSERT_EQ(wr_register(fixed, moving, c, &r), WR_OK) << last_error();
  wr_params p;
  ASSERT_EQ(wr_result_params(r, &p), WR_OK);
  EXPECT_NEAR(p.tx, 4, 1.0);
  EXPECT_NEAR(p.ty, -2, 1.0);
  EXPECT_GE(wr_result_max_mi_bits(r), 0.0);
  EXPECT_LT(wr_result_cc(r), -0.9);

  wr_image* reg = nullptr;
  ASSERT_EQ(wr_result_registered(r, &reg), WR_OK);
  EXPECT_EQ(wr_image_width(reg), 96);

  TempDir dir("capi");
  ASSERT_EQ(wr_result_write(r, (dir / "out").c_str()), WR_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "params.json"));

  wr_mask* mask = nullptr;
  ASSERT_EQ(wr_mask_load_pgm((dir / "out" / "mask.pgm").c_str(), &mask), WR_OK);
  EXPECT_GT(wr_mask_count(mask), 96u * 96u / 2);
  EXPECT_EQ(wr_overlay_write_ppm(fixed, reg, mask, 0.0, (dir / "ov.ppm").c_str()), WR_OK);
  EXPECT_EQ(wr_overlay_write_ppm(fixed, reg, nullptr, 0.2, (dir / "ov2.ppm").c_str()), WR_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "ov.ppm"));

  wr_mask_free(mask);
  wr_image_free(reg);
  wr_result_free(r);
  wr_config_free(c);
  wr_image_free(fixed);
  wr_image_free(moving);
}

TEST(CApi, RegistrationErrors) {
  std::vector<double> small(16 * 16, 1.0), other(40 * 41, 1.0);
  wr_image *a = nullptr, *b = nullptr;
  ASSERT_EQ(wr_image_create(16, 16, small.data(), &a), WR_OK);
  ASSERT_EQ(wr_image_create(40, 41, other.data(), &b), WR_OK);
  wr_config* c = nullptr;
  wr_config_create(&c);
  wr_result* r = nullptr;
  EXPECT_EQ(wr_register(a, a, c, &r), WR_ERR_PARAMETER);
  EXPECT_EQ(wr_register(b, a, c, &r), WR_ERR_DIMENSION);
  EXPECT_EQ(r, nullptr);
  wr_config_free(c);
  wr_image_free(a);
  wr_image_free(b);
}

TEST(CApi, FixtureSpecErrors) {
  wr_fixture_spec spec = wr_fixture_spec_default();
  spec.pattern = "stripes";
  wr_image *f = nullptr, *m = nullptr;
  EXPECT_EQ(wr_fixture_generate(&spec, &f, &m), WR_ERR_PARAMETER);
  spec = wr_fixture_spec_default();
  spec.size = 32;
  EXPECT_EQ(wr_fixture_generate(&spec, &f, &m), WR_ERR_PARAMETER);
  EXPECT_EQ(f, nullptr);
}

TEST(CApi, Compare) {
  TempDir dir("capi");
  wr_fixture_spec spec = wr_fixture_spec_default();
  spec.size = 64;
  spec.truth.tx = 2;
  ASSERT_EQ(wr_fixture_write(&spec, (dir / "fx" / "only").c_str()), WR_OK);
  size_t n = 0;
  ASSERT_EQ(wr_compare_count_pairs((dir / "fx").c_str(), &n), WR_OK);
  EXPECT_EQ(n, 1u);

  wr_config* c = nullptr;
  wr_config_create(&c);
  wr_config_set_max_iterations(c, 40);
  ASSERT_EQ(wr_compare((dir / "fx").c_str(), c, (dir / "out").c_str(), 0), WR_OK) << last_error();
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "report.csv"));
  EXPECT_FALSE(std::filesystem::exists(dir / "out" / "only"));

  std::ofstream(dir / "empty.csv") << "id,fixed_path,moving_path\n";
  EXPECT_EQ(wr_compare((dir / "empty.csv").c_str(), c, (dir / "out2").c_str(), 1), WR_ERR_PARAMETER);
  EXPECT_NE(last_error().find("empty manifest"), std::string::npos);
  wr_config_free(c);
}

}  // namespace
