#include <gtest/gtest.h>

#include <sstream>

#include "lesionroi/cli.hpp"
#include "lesionroi/dataset_io.hpp"
#include "support/synthetic_dataset.hpp"

using namespace lesionroi;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = oracle::fresh_dir("cli");
        samples_ = synthetic::write_dataset(dir_ / "data", 4, 500, 375, 42);
    }
    static fs::path dir_;
    static std::vector<synthetic::Sample> samples_;
    fs::path data() const { return dir_ / "data"; }
};

fs::path CliTest::dir_;
std::vector<synthetic::Sample> CliTest::samples_;

}  // namespace

TEST(Cli, NoArgumentsIsConfigError) {
    const auto r = run_cli({});
    EXPECT_EQ(r.code, cli::kConfigError);
}

TEST(Cli, EvalDetWithoutArgumentsPrintsUsage) {
    const auto r = run_cli({"eval-det"});
    EXPECT_EQ(r.code, cli::kConfigError);
    EXPECT_NE(r.err.find("--manifest"), std::string::npos);
}

TEST(Cli, UnknownSubcommandAndFlag) {
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kConfigError);
    EXPECT_EQ(run_cli({"convert-gt", "--manifest", "m", "--out", "o", "--bogus"}).code, cli::kConfigError);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, cli::kOk); }

TEST_F(CliTest, ConvertGtRecoversRois) {
    const auto gt = dir_ / "gt.csv";
    const auto r = run_cli({"convert-gt", "--manifest", (data() / "manifest.csv").string(), "--out", gt.string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(r.out, "convert-gt images=4 boxes=4 rejects=0\n");
    const auto table = read_gt_table(gt);
    ASSERT_EQ(table.size(), samples_.size());
    for (std::size_t i = 0; i < table.size(); ++i) EXPECT_EQ(table[i].box, samples_[i].roi);
}

TEST_F(CliTest, EvalDetTwoThresholdRows) {
    const auto gt = dir_ / "gt_eval.csv";
    ASSERT_EQ(run_cli({"convert-gt", "--manifest", (data() / "manifest.csv").string(), "--out", gt.string()}).code, 0);
    synthetic::write_self_detections(samples_, dir_ / "d.jsonl");
    const auto report = dir_ / "report.csv";
    const auto r = run_cli({"eval-det", "--manifest", (data() / "manifest.csv").string(), "--gt", gt.string(), "--dets",
                            (dir_ / "d.jsonl").string(), "--iou", "0.5", "0.75", "--out", report.string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_EQ(oracle::slurp(report),
              "threshold,precision,recall,mean_iou,tp,fp,fn,n_images,flags\n"
              "0.500000,1.000000,1.000000,1.000000,4,0,0,4,none\n"
              "0.750000,1.000000,1.000000,1.000000,4,0,0,4,none\n");
    EXPECT_NE(r.out.find("precision@0.500000=1.000000"), std::string::npos);
}

TEST_F(CliTest, EvalDetMissingDetectionsAreFalseNegatives) {
    const auto gt = dir_ / "gt_fn.csv";
    ASSERT_EQ(run_cli({"convert-gt", "--manifest", (data() / "manifest.csv").string(), "--out", gt.string()}).code, 0);
    std::vector<synthetic::Sample> half(samples_.begin(), samples_.begin() + 2);
    synthetic::write_self_detections(half, dir_ / "half.jsonl");
    const auto report = dir_ / "report_fn.csv";
    const auto r = run_cli({"eval-det", "--manifest", (data() / "manifest.csv").string(), "--gt", gt.string(), "--dets",
                            (dir_ / "half.jsonl").string(), "--out", report.string(), "--per-image",
                            (dir_ / "per_image.csv").string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(oracle::slurp(report).find("0.500000,1.000000,0.500000,1.000000,2,0,2,4,none"), std::string::npos);
    EXPECT_NE(oracle::slurp(dir_ / "per_image.csv").find("ISIC_0003,0.500000,0,0,1,\n"), std::string::npos);
}

TEST_F(CliTest, EvalDetBadThresholdIsConfigError) {
    const auto r = run_cli({"eval-det", "--manifest", "m", "--gt", "g", "--dets", "d", "--iou", "0.75", "0.5", "--out",
                            (dir_ / "never.csv").string()});
    EXPECT_EQ(r.code, cli::kConfigError);
    EXPECT_FALSE(fs::exists(dir_ / "never.csv"));
}

TEST_F(CliTest, SweepDefaultGrid) {
    const auto gt = dir_ / "gt_sweep.csv";
    ASSERT_EQ(run_cli({"convert-gt", "--manifest", (data() / "manifest.csv").string(), "--out", gt.string()}).code, 0);
    synthetic::write_self_detections(samples_, dir_ / "sweep.jsonl");
    const auto r = run_cli({"sweep", "--manifest", (data() / "manifest.csv").string(), "--gt", gt.string(), "--dets",
                            (dir_ / "sweep.jsonl").string(), "--out", (dir_ / "curve.csv").string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const std::string curve = oracle::slurp(dir_ / "curve.csv");
    EXPECT_EQ(std::count(curve.begin(), curve.end(), '\n'), 11);
    EXPECT_NE(curve.find("0.950000,1.000000,1.000000,1.000000"), std::string::npos);
}

TEST_F(CliTest, AugmentWritesLayout) {
    const auto out = dir_ / "aug";
    const auto r = run_cli({"augment", "--manifest", (data() / "manifest.csv").string(), "--roi-source", "mask",
                            "--target", "224", "--out", out.string(), "--workers", "3"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto idx = load_manifest(out / "manifest.csv");
    EXPECT_GT(idx.size(), 4u * 8u - 1);
    EXPECT_NE(r.out.find("outputs=" + std::to_string(idx.size())), std::string::npos);
    EXPECT_EQ(read_gt_table(out / "gt.csv").size(), idx.size());
}

TEST_F(CliTest, AugmentFromDetections) {
    DetectionsFile d;
    for (const auto& s : samples_) d[s.id] = {{s.roi, 0.9}, {{0, 0, 10, 10}, 0.2}};
    d.erase(samples_.back().id);
    write_detections(d, dir_ / "aug_dets.jsonl");
    const auto out = dir_ / "aug_dets";
    const auto r = run_cli({"augment", "--manifest", (data() / "manifest.csv").string(), "--roi-source", "dets",
                            "--dets", (dir_ / "aug_dets.jsonl").string(), "--rotations", "0", "--out", out.string(),
                            "--rejects", (dir_ / "aug_rejects.csv").string()});
    EXPECT_EQ(r.code, cli::kItemFailure);
    EXPECT_NE(oracle::slurp(dir_ / "aug_rejects.csv").find(samples_.back().id), std::string::npos);
    EXPECT_TRUE(fs::exists(out / "manifest.csv"));
}

TEST_F(CliTest, AugmentDetsSourceNeedsDetsFile) {
    const auto r = run_cli({"augment", "--manifest", (data() / "manifest.csv").string(), "--roi-source", "dets",
                            "--out", (dir_ / "x").string()});
    EXPECT_EQ(r.code, cli::kConfigError);
    EXPECT_FALSE(fs::exists(dir_ / "x"));
}

TEST_F(CliTest, AugmentBadRotationIsConfigError) {
    const auto r = run_cli({"augment", "--manifest", (data() / "manifest.csv").string(), "--rotations", "45", "--out",
                            (dir_ / "y").string()});
    EXPECT_EQ(r.code, cli::kConfigError);
}

TEST_F(CliTest, ResizeToPaperSize) {
    const auto out = dir_ / "resized";
    const auto r = run_cli({"resize", "--manifest", (data() / "manifest.csv").string(), "--width", "250", "--height",
                            "180", "--out", out.string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto idx = load_manifest(out / "manifest.csv");
    ASSERT_EQ(idx.size(), 4u);
    const Image img = read_image(idx.entries[0].image_path);
    EXPECT_EQ(img.width(), 250);
    EXPECT_EQ(img.height(), 180);
    EXPECT_EQ(read_mask(*idx.entries[0].mask_path).width(), 250);
}

TEST_F(CliTest, EvalSegPerImageAndPooled) {
    const auto preds = dir_ / "preds";
    fs::create_directories(preds);
    const auto idx = load_manifest(data() / "manifest.csv");
    for (const auto& e : idx.entries) fs::copy_file(*e.mask_path, preds / (e.image_id + ".png"));
    for (const char* avg : {"per-image", "pooled"}) {
        const auto out = dir_ / (std::string("seg_") + avg + ".csv");
        const auto r = run_cli({"eval-seg", "--manifest", (data() / "manifest.csv").string(), "--pred-dir",
                                preds.string(), "--average", avg, "--out", out.string()});
        ASSERT_EQ(r.code, cli::kOk) << r.err;
        EXPECT_NE(r.out.find("jaccard=1.000000 dice=1.000000"), std::string::npos);
    }
    fs::remove(preds / "ISIC_0002.png");
    const auto r = run_cli({"eval-seg", "--manifest", (data() / "manifest.csv").string(), "--pred-dir", preds.string(),
                            "--out", (dir_ / "seg_missing.csv").string()});
    EXPECT_EQ(r.code, cli::kItemFailure);
}

TEST_F(CliTest, EvalClsConfusion) {
    // Labels: ISIC_0000 and ISIC_0003 malignant, the others benign. Predict everything malignant.
    oracle::spit(dir_ / "cls.csv", "image_id,label\nISIC_0000,malignant\nISIC_0001,malignant\nISIC_0002,malignant\n"
                                   "ISIC_0003,malignant\n");
    const auto r = run_cli({"eval-cls", "--manifest", (data() / "manifest.csv").string(), "--pred",
                            (dir_ / "cls.csv").string(), "--out", (dir_ / "cls_out.csv").string()});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const std::string csv = oracle::slurp(dir_ / "cls_out.csv");
    EXPECT_NE(csv.find(",2,2,0,0,"), std::string::npos) << csv;
    EXPECT_NE(csv.find("mcc_degenerate"), std::string::npos);
}

TEST_F(CliTest, WorkersEnvFallbackValidated) {
    ::setenv("LESIONROI_WORKERS", "zero", 1);
    const auto r = run_cli({"convert-gt", "--manifest", (data() / "manifest.csv").string(), "--out",
                            (dir_ / "gt_env.csv").string()});
    ::unsetenv("LESIONROI_WORKERS");
    EXPECT_EQ(r.code, cli::kConfigError);
    EXPECT_FALSE(fs::exists(dir_ / "gt_env.csv"));
}

TEST_F(CliTest, ConvertGtMissingManifestIsItemFailure) {
    const auto r = run_cli({"convert-gt", "--manifest", (dir_ / "nope.csv").string(), "--out", (dir_ / "g.csv").string()});
    EXPECT_EQ(r.code, cli::kItemFailure);
}
