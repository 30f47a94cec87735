#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "lesionroi/dataset_io.hpp"
#include "lesionroi/error.hpp"
#include "lesionroi/image_codec.hpp"
#include "support/oracles.hpp"

using namespace lesionroi;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no lesionroi::Error thrown";
    return ErrorCode::InvalidArgument;
}

BinaryMask block(int w, int h, const Box& b) {
    BinaryMask m(w, h);
    for (int y = b.y_min; y < b.y_max; ++y)
        for (int x = b.x_min; x < b.x_max; ++x) m.set(x, y, true);
    return m;
}

}  // namespace

TEST(Codec, PngRoundTripRgbAndGray) {
    const auto dir = oracle::fresh_dir("codec");
    std::mt19937_64 rng(1);
    Image rgb(17, 9, 3);
    for (auto& c : rgb.channels)
        for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = static_cast<std::uint8_t>(rng());
    write_png(dir / "rgb.png", rgb);
    EXPECT_EQ(read_image(dir / "rgb.png"), rgb);

    const BinaryMask m = oracle::random_mask(rng, 23, 11);
    write_mask_png(dir / "m.png", m);
    EXPECT_EQ(read_mask(dir / "m.png"), m);
    // A gray PNG decodes to three equal channels in RGB mode.
    const Image as_rgb = read_image(dir / "m.png");
    ASSERT_EQ(as_rgb.num_channels(), 3);
    EXPECT_TRUE((as_rgb.channels[0] == as_rgb.channels[2]).all());
    EXPECT_FALSE(fs::exists(dir / "m.png.partial"));
}

TEST(Codec, Errors) {
    const auto dir = oracle::fresh_dir("codec_err");
    EXPECT_EQ(code_of([&] { read_image(dir / "missing.png"); }), ErrorCode::FileNotFound);
    oracle::spit(dir / "junk.png", "definitely not an image");
    EXPECT_EQ(code_of([&] { read_image(dir / "junk.png"); }), ErrorCode::DecodeError);
    oracle::spit(dir / "trunc.png", std::string("\x89PNG\r\n\x1a\n\0\0", 10));
    EXPECT_EQ(code_of([&] { read_image(dir / "trunc.png"); }), ErrorCode::DecodeError);
    EXPECT_EQ(code_of([&] { write_png(dir / "nodir" / "x.png", Image(2, 2, 3)); }), ErrorCode::WriteError);
}

TEST(Manifest, EmptyAndHeaderOnly) {
    const auto dir = oracle::fresh_dir("manifest_empty");
    oracle::spit(dir / "empty.csv", "");
    EXPECT_EQ(load_manifest(dir / "empty.csv").size(), 0u);
    oracle::spit(dir / "header.csv", "image_id,image_path,mask_path,label\n");
    EXPECT_EQ(load_manifest(dir / "header.csv").size(), 0u);
}

TEST(Manifest, SortedByIdAndResolvedRelativeToManifest) {
    const auto dir = oracle::fresh_dir("manifest_sorted");
    oracle::spit(dir / "b.png", "x");
    oracle::spit(dir / "a.png", "x");
    oracle::spit(dir / "a_mask.png", "x");
    oracle::spit(dir / "m.csv", "image_id,image_path,mask_path,label\nb,b.png,,benign\na,a.png,a_mask.png,malignant\n");
    const auto idx = load_manifest(dir / "m.csv");
    ASSERT_EQ(idx.size(), 2u);
    EXPECT_EQ(idx.entries[0].image_id, "a");
    EXPECT_EQ(idx.entries[1].image_id, "b");
    EXPECT_EQ(idx.entries[0].image_path, (dir / "a.png").lexically_normal());
    EXPECT_EQ(*idx.entries[0].mask_path, (dir / "a_mask.png").lexically_normal());
    EXPECT_FALSE(idx.entries[1].mask_path);
    EXPECT_EQ(*idx.entries[1].label, "benign");
    ASSERT_NE(idx.find("b"), nullptr);
    EXPECT_EQ(idx.find("c"), nullptr);
}

TEST(Manifest, ErrorCodes) {
    const auto dir = oracle::fresh_dir("manifest_err");
    oracle::spit(dir / "a.png", "x");
    EXPECT_EQ(code_of([&] { load_manifest(dir / "nope.csv"); }), ErrorCode::FileNotFound);

    oracle::spit(dir / "dup.csv", "image_id,image_path,mask_path,label\na,a.png,,\na,a.png,,\n");
    try {
        load_manifest(dir / "dup.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
        EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
    }

    oracle::spit(dir / "dangling.csv", "image_id,image_path,mask_path,label\na,a.png,gone.png,\n");
    EXPECT_EQ(code_of([&] { load_manifest(dir / "dangling.csv"); }), ErrorCode::DanglingPath);
    EXPECT_NO_THROW(load_manifest(dir / "dangling.csv", {.check_paths = false}));

    oracle::spit(dir / "header.csv", "id,path\na,a.png\n");
    EXPECT_EQ(code_of([&] { load_manifest(dir / "header.csv"); }), ErrorCode::ParseError);
    oracle::spit(dir / "label.csv", "image_id,image_path,mask_path,label\na,a.png,,nevus\n");
    EXPECT_EQ(code_of([&] { load_manifest(dir / "label.csv"); }), ErrorCode::ParseError);
    oracle::spit(dir / "fields.csv", "image_id,image_path,mask_path,label\na,a.png\n");
    EXPECT_EQ(code_of([&] { load_manifest(dir / "fields.csv"); }), ErrorCode::ParseError);
}

TEST(Manifest, QuotedFieldsAndRoundTrip) {
    const auto dir = oracle::fresh_dir("manifest_quote");
    oracle::spit(dir / "a,b.png", "x");
    DatasetIndex idx;
    idx.entries.push_back({"id,1", (dir / "a,b.png").lexically_normal(), std::nullopt, std::string("benign")});
    write_manifest(idx, dir / "m.csv");
    const auto back = load_manifest(dir / "m.csv");
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back.entries[0], idx.entries[0]);
}

TEST(Detections, ParseOneImage) {
    const auto dir = oracle::fresh_dir("dets");
    oracle::spit(dir / "d.jsonl", "{\"image_id\": \"a\", \"boxes\": [[1, 2, 30, 40, 0.75]]}\n\n");
    const auto d = read_detections(dir / "d.jsonl");
    ASSERT_EQ(d.size(), 1u);
    ASSERT_EQ(d.at("a").size(), 1u);
    EXPECT_EQ(d.at("a")[0].box, (Box{1, 2, 30, 40}));
    EXPECT_EQ(d.at("a")[0].score, 0.75);
}

TEST(Detections, FractionalCoordinatesWidenToPixelCover) {
    const auto dir = oracle::fresh_dir("dets_frac");
    oracle::spit(dir / "d.jsonl", "{\"image_id\": \"a\", \"boxes\": [[1.4, 2.9, 30.1, 39.0, 0.5]]}\n");
    EXPECT_EQ(read_detections(dir / "d.jsonl").at("a")[0].box, (Box{1, 2, 31, 39}));
}

TEST(Detections, ValidationAndParseErrors) {
    const auto dir = oracle::fresh_dir("dets_err");
    oracle::spit(dir / "inv.jsonl", "{\"image_id\": \"a\", \"boxes\": [[10, 2, 10, 40, 0.5]]}\n");
    EXPECT_EQ(code_of([&] { read_detections(dir / "inv.jsonl"); }), ErrorCode::ValidationError);
    oracle::spit(dir / "score.jsonl", "{\"image_id\": \"a\", \"boxes\": [[1, 2, 10, 40, 1.5]]}\n");
    EXPECT_EQ(code_of([&] { read_detections(dir / "score.jsonl"); }), ErrorCode::ValidationError);
    oracle::spit(dir / "bad.jsonl", "{\"image_id\": \"a\", \"boxes\": []}\n{oops\n");
    try {
        read_detections(dir / "bad.jsonl");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("bad.jsonl:2"), std::string::npos);
    }
    oracle::spit(dir / "shape.jsonl", "{\"image_id\": \"a\", \"boxes\": [[1, 2, 3]]}\n");
    EXPECT_EQ(code_of([&] { read_detections(dir / "shape.jsonl"); }), ErrorCode::ParseError);
    oracle::spit(dir / "dup.jsonl", "{\"image_id\": \"a\", \"boxes\": []}\n{\"image_id\": \"a\", \"boxes\": []}\n");
    EXPECT_EQ(code_of([&] { read_detections(dir / "dup.jsonl"); }), ErrorCode::DuplicateId);
}

TEST(Detections, WriteReadIsIdentity) {
    const auto dir = oracle::fresh_dir("dets_rt");
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> score(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        DetectionsFile d;
        const int n = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int i = 0; i < n; ++i) {
            auto& list = d["img" + std::to_string(i)];
            const int k = std::uniform_int_distribution<int>(0, 4)(rng);
            for (int j = 0; j < k; ++j) list.push_back({oracle::random_box(rng, 500, 375), score(rng)});
        }
        write_detections(d, dir / "d.jsonl");
        ASSERT_EQ(read_detections(dir / "d.jsonl"), d);
    }
}

TEST(Detections, ResolvableAgainstIndex) {
    DatasetIndex idx;
    idx.entries.push_back({"a", "a.png", std::nullopt, std::nullopt});
    DetectionsFile d{{"a", {}}};
    EXPECT_NO_THROW(require_resolvable(d, idx));
    d["zzz"] = {};
    EXPECT_EQ(code_of([&] { require_resolvable(d, idx); }), ErrorCode::ValidationError);
}

TEST(ConvertGt, BlocksFullFrameAndEmpty) {
    const auto dir = oracle::fresh_dir("convert");
    write_mask_png(dir / "block.png", block(20, 20, {5, 5, 10, 10}));
    write_mask_png(dir / "full.png", block(30, 12, {0, 0, 30, 12}));
    write_mask_png(dir / "empty.png", BinaryMask(8, 8));
    oracle::spit(dir / "broken.png", "garbage");
    for (const char* f : {"i1.png", "i2.png", "i3.png", "i4.png", "i5.png"}) oracle::spit(dir / f, "x");
    oracle::spit(dir / "m.csv",
                 "image_id,image_path,mask_path,label\n"
                 "block,i1.png,block.png,\nfull,i2.png,full.png,\nempty,i3.png,empty.png,\n"
                 "broken,i4.png,broken.png,\nnomask,i5.png,,\n");
    const auto idx = load_manifest(dir / "m.csv");
    const auto r = convert_gt(idx, {.largest_component = false, .workers = 3});
    ASSERT_EQ(r.table.size(), 2u);
    EXPECT_EQ(r.table[0], (GtRow{"block", {5, 5, 10, 10}}));
    EXPECT_EQ(r.table[1], (GtRow{"full", {0, 0, 30, 12}}));
    ASSERT_EQ(r.rejects.size(), 3u);
    EXPECT_EQ(r.rejects[0].image_id, "broken");
    EXPECT_TRUE(r.rejects[0].error);
    EXPECT_EQ(r.rejects[1].image_id, "empty");
    EXPECT_FALSE(r.rejects[1].error);
    EXPECT_EQ(r.rejects[2].image_id, "nomask");

    write_gt_table(r.table, dir / "gt.csv");
    EXPECT_EQ(read_gt_table(dir / "gt.csv"), r.table);
    const std::string first = oracle::slurp(dir / "gt.csv");
    write_gt_table(convert_gt(idx, {.largest_component = false, .workers = 1}).table, dir / "gt.csv");
    EXPECT_EQ(oracle::slurp(dir / "gt.csv"), first);
}

TEST(Reports, HeaderOnlyAndSingleRow) {
    const auto dir = oracle::fresh_dir("reports");
    write_eval_report({}, dir / "empty.csv");
    EXPECT_EQ(oracle::slurp(dir / "empty.csv"), "threshold,precision,recall,mean_iou,tp,fp,fn,n_images,flags\n");

    EvalReport r;
    r.threshold = 0.5;
    r.precision = r.recall = r.mean_iou = 1.0;
    r.tp = 3;
    r.n_images = 3;
    const std::vector<EvalReport> one{r};
    write_eval_report(one, dir / "one.csv");
    EXPECT_EQ(oracle::slurp(dir / "one.csv"),
              "threshold,precision,recall,mean_iou,tp,fp,fn,n_images,flags\n"
              "0.500000,1.000000,1.000000,1.000000,3,0,0,3,none\n");

    Curve c{r};
    c[0].threshold = 0.55;
    write_curve(c, dir / "curve.csv");
    EXPECT_EQ(oracle::slurp(dir / "curve.csv"),
              "threshold,precision,recall,mean_iou\n0.550000,1.000000,1.000000,1.000000\n");

    EvalReport empty;
    empty.threshold = 0.75;
    empty.precision_undefined = empty.recall_undefined = empty.mean_iou_undefined = true;
    const std::vector<EvalReport> flagged{empty};
    write_eval_report(flagged, dir / "flags.csv");
    EXPECT_NE(oracle::slurp(dir / "flags.csv").find("precision_undefined;recall_undefined;mean_iou_undefined"),
              std::string::npos);
}

TEST(Reports, UnwritablePath) {
    const auto dir = oracle::fresh_dir("reports_bad");
    EXPECT_EQ(code_of([&] { write_eval_report({}, dir / "missing_dir" / "r.csv"); }), ErrorCode::WriteError);
    EXPECT_FALSE(fs::exists(dir / "missing_dir"));
}

TEST(Augmented, TwelveOutputsAndManifestRoundTrip) {
    const auto dir = oracle::fresh_dir("augmented");
    Image img(500, 375, 3, 90);
    const Box roi{190, 138, 310, 238};
    BinaryMask mask(500, 375);
    for (int y = roi.y_min; y < roi.y_max; ++y)
        for (int x = roi.x_min; x < roi.x_max; ++x) mask.set(x, y, true);
    const AugmentParams p;
    const auto pl = plan("isic", 500, 375, roi, p);
    std::vector<AugmentedGroup> groups{{std::string("malignant"), apply_plan(img, &mask, pl, p)}};
    const auto out = dir / "aug";
    const DatasetIndex written = write_augmented(groups, out);

    ASSERT_EQ(written.size(), 12u);
    std::size_t images = 0, masks = 0;
    for (const auto& e : fs::directory_iterator(out / "images")) images += e.path().extension() == ".png";
    for (const auto& e : fs::directory_iterator(out / "masks")) masks += e.path().extension() == ".png";
    EXPECT_EQ(images, 12u);
    EXPECT_EQ(masks, 12u);

    const DatasetIndex loaded = load_manifest(out / "manifest.csv");
    EXPECT_EQ(loaded.entries, written.entries);
    const GtTable gt = read_gt_table(out / "gt.csv");
    ASSERT_EQ(gt.size(), 12u);
    for (const auto& row : gt) {
        const auto* e = loaded.find(row.image_id);
        ASSERT_NE(e, nullptr);
        EXPECT_EQ(circumscribe(read_mask(*e->mask_path)), row.box);
        EXPECT_TRUE(row.box.inside_frame(224, 224));
    }
}

TEST(Augmented, FailedGroupLeavesNoFiles) {
    const auto dir = oracle::fresh_dir("augmented_fail");
    AugmentedGroup g;
    AugmentedSample ok;
    ok.image = Image(4, 4, 3);
    ok.record.out_id = "ok";
    AugmentedSample bad;
    bad.image = Image(4, 4, 2);  // two channels cannot be encoded
    bad.record.out_id = "bad";
    g.samples = {ok, bad};
    EXPECT_THROW(write_augmented_files(g, dir), Error);
    EXPECT_FALSE(fs::exists(dir / "images" / "ok.png"));
    EXPECT_FALSE(fs::exists(dir / "images" / "bad.png"));
    EXPECT_FALSE(fs::exists(dir / "images" / "bad.png.partial"));
}
