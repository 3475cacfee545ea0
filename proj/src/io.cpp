#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "png_io.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace salrank {

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ordered_json parse_json_file(const std::string& path) {
    try {
        return ordered_json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Format, "cannot parse '" + path + "': " + e.what());
    }
}

std::string require_string(const ordered_json& j, const char* key,
                           const std::string& where) {
    if (!j.contains(key) || !j[key].is_string() ||
        j[key].get<std::string>().empty())
        fail(ErrorKind::Format,
             where + ": missing or empty string field '" + key + "'");
    return j[key].get<std::string>();
}

}  // namespace

Manifest read_manifest(const std::string& path) {
    ordered_json j = parse_json_file(path);
    if (!j.is_object() || !j.contains("images") || !j["images"].is_array())
        fail(ErrorKind::Format,
             "manifest '" + path + "' must be an object with an 'images' array");
    Manifest m;
    std::set<std::string> seen;
    for (const auto& e : j["images"]) {
        std::string where = "manifest '" + path + "'";
        ManifestEntry entry;
        entry.id = require_string(e, "id", where);
        if (entry.id.find('/') != std::string::npos ||
            entry.id.find('\\') != std::string::npos)
            fail(ErrorKind::Format,
                 where + ": id '" + entry.id + "' contains a path separator");
        if (!seen.insert(entry.id).second)
            fail(ErrorKind::Format, where + ": duplicate id '" + entry.id + "'");
        entry.instance_map_path = require_string(e, "instance_map", where);
        entry.fixation_path = require_string(e, "fixations", where);
        if (e.contains("reference_rank"))
            entry.reference_rank_path = e["reference_rank"].get<std::string>();
        if (e.contains("observer_masks")) {
            if (!e["observer_masks"].is_array())
                fail(ErrorKind::Format,
                     where + ": 'observer_masks' must be an array");
            for (const auto& p : e["observer_masks"])
                entry.observer_mask_paths.push_back(p.get<std::string>());
        }
        if (e.contains("split")) {
            entry.split = e["split"].get<std::string>();
            if (entry.split != "train" && entry.split != "test")
                fail(ErrorKind::Format,
                     where + ": split must be 'train' or 'test'");
        }
        m.entries.push_back(std::move(entry));
    }
    return m;
}

void write_manifest(const Manifest& manifest, const std::string& path) {
    ordered_json images = ordered_json::array();
    for (const ManifestEntry& e : manifest.entries) {
        ordered_json j;
        j["id"] = e.id;
        j["instance_map"] = e.instance_map_path;
        j["fixations"] = e.fixation_path;
        if (!e.reference_rank_path.empty())
            j["reference_rank"] = e.reference_rank_path;
        if (!e.observer_mask_paths.empty())
            j["observer_masks"] = e.observer_mask_paths;
        j["split"] = e.split;
        images.push_back(std::move(j));
    }
    ordered_json root;
    root["images"] = std::move(images);
    write_text_file(path, root.dump(2) + "\n");
}

std::string resolve_path(const std::string& root, const std::string& rel) {
    fs::path p(rel);
    if (p.is_absolute()) return rel;
    return (fs::path(root) / p).string();
}

InstanceMap read_instance_map(const std::string& path) {
    GrayImage img = read_gray_png(path);
    ImageGrid grid(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        grid.values[i] = double(img.pixels[i]);
    return InstanceMap::from_grid(std::move(grid));
}

void write_instance_map(const InstanceMap& map, const std::string& path) {
    std::uint32_t max_label = map.labels.empty() ? 0 : map.labels.back();
    int depth = max_label > 255 ? 16 : 8;
    std::vector<std::uint16_t> pixels(map.grid.size());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        pixels[i] = std::uint16_t(map.grid.values[i]);
    write_gray_png(path, pixels, map.grid.width, map.grid.height, depth);
}

FixationInput read_fixations(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream in(path);
        if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
        std::string line;
        if (!std::getline(in, line) || (line != "x,y" && line != "x,y\r"))
            fail(ErrorKind::Format,
                 "'" + path + "': expected header 'x,y' on line 1");
        std::vector<FixationPoint> points;
        int lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            FixationPoint p;
            char trailing;
            if (std::sscanf(line.c_str(), "%d,%d%c", &p.x, &p.y, &trailing) != 2)
                fail(ErrorKind::Format, "'" + path + "': parse error at line " +
                                            std::to_string(lineno));
            if (p.x < 0 || p.y < 0)
                fail(ErrorKind::Format,
                     "'" + path + "': negative coordinate at line " +
                         std::to_string(lineno));
            points.push_back(p);
        }
        return FixationInput::from_points(std::move(points));
    }
    GrayImage img = read_gray_png(path);
    double scale = img.bit_depth == 8 ? 255.0 : 65535.0;
    ImageGrid grid(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        grid.values[i] = double(img.pixels[i]) / scale;
    return FixationInput::from_density(std::move(grid));
}

void write_fixation_points(const std::vector<FixationPoint>& points,
                           const std::string& path) {
    std::string out = "x,y\n";
    for (const FixationPoint& p : points)
        out += std::to_string(p.x) + "," + std::to_string(p.y) + "\n";
    write_text_file(path, out);
}

SaliencyMap read_saliency(const std::string& path) {
    GrayImage img = read_gray_png(path);
    double scale = img.bit_depth == 8 ? 255.0 : 65535.0;
    ImageGrid grid(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        grid.values[i] = double(img.pixels[i]) / scale;
    return SaliencyMap::from_grid(std::move(grid));
}

void write_saliency(const SaliencyMap& map, const std::string& path) {
    std::vector<std::uint16_t> pixels(map.grid.size());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        pixels[i] = std::uint16_t(std::lround(map.grid.values[i] * 255.0));
    write_gray_png(path, pixels, map.grid.width, map.grid.height, 8);
}

ImageGrid read_binary_mask(const std::string& path) {
    GrayImage img = read_gray_png(path);
    unsigned full = img.bit_depth == 8 ? 255u : 65535u;
    ImageGrid grid(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        if (img.pixels[i] != 0 && img.pixels[i] != full)
            fail(ErrorKind::Format,
                 "'" + path + "' is not bilevel: found value " +
                     std::to_string(img.pixels[i]));
        grid.values[i] = img.pixels[i] ? 1.0 : 0.0;
    }
    return grid;
}

void write_binary_mask(const ImageGrid& mask, const std::string& path) {
    if (!is_binary_grid(mask))
        fail(ErrorKind::InvalidArgument, "mask is not binary");
    std::vector<std::uint16_t> pixels(mask.size());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        pixels[i] = mask.values[i] != 0.0 ? 255 : 0;
    write_gray_png(path, pixels, mask.width, mask.height, 8);
}

namespace {

std::string sidecar_path(const std::string& png_path) {
    if (png_path.size() < 4 ||
        png_path.substr(png_path.size() - 4) != ".png")
        fail(ErrorKind::InvalidArgument,
             "ranked ground truth path must end in .png: '" + png_path + "'");
    return png_path.substr(0, png_path.size() - 4) + ".rank.json";
}

}  // namespace

void write_ranked_gt(const RankedGroundTruth& gt, const std::string& png_path) {
    std::vector<std::uint16_t> pixels(gt.map.size());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        pixels[i] = std::uint16_t(gt.map.values[i]);
    write_gray_png(png_path, pixels, gt.map.width, gt.map.height, 8);

    ordered_json j;
    j["setting"] = setting_name(gt.setting);
    j["order"] = gt.order;
    ordered_json grays, scores, sizes;
    for (const auto& [label, gray] : gt.gray_values)
        grays[std::to_string(label)] = gray;
    for (const auto& [label, score] : gt.scores)
        scores[std::to_string(label)] = score;  // full precision round trip
    for (const auto& [label, size] : gt.sizes)
        sizes[std::to_string(label)] = size;
    j["gray_values"] = std::move(grays);
    j["scores"] = std::move(scores);
    j["sizes"] = std::move(sizes);
    write_text_file(sidecar_path(png_path), j.dump(2) + "\n");
}

RankedGroundTruth read_ranked_gt(const std::string& png_path) {
    std::string side = sidecar_path(png_path);
    if (!fs::exists(side))
        fail(ErrorKind::Format,
             "missing rank sidecar '" + side +
                 "'; regenerate the corpus to restore it");
    GrayImage img = read_gray_png(png_path);
    if (img.bit_depth != 8)
        fail(ErrorKind::Format,
             "'" + png_path + "': ranked maps are 8-bit, got 16");
    ImageGrid map(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        map.values[i] = double(img.pixels[i]);

    ordered_json j = parse_json_file(side);
    try {
        Setting setting = setting_from_name(j.at("setting").get<std::string>());
        auto order = j.at("order").get<std::vector<std::uint32_t>>();
        std::map<std::uint32_t, int> grays;
        std::map<std::uint32_t, double> scores;
        std::map<std::uint32_t, std::int64_t> sizes;
        for (const auto& [key, value] : j.at("gray_values").items())
            grays[std::uint32_t(std::stoul(key))] = value.get<int>();
        for (const auto& [key, value] : j.at("scores").items())
            scores[std::uint32_t(std::stoul(key))] = value.get<double>();
        for (const auto& [key, value] : j.at("sizes").items())
            sizes[std::uint32_t(std::stoul(key))] = value.get<std::int64_t>();
        RankedGroundTruth gt = RankedGroundTruth::create(
            setting, std::move(order), std::move(grays), std::move(scores),
            std::move(sizes), std::move(map));
        // The painted map cannot be traced back to labels directly (gray
        // values may repeat in the absolute setting), so check per gray
        // value that pixel counts match the recorded sizes.
        std::map<int, std::int64_t> want, have;
        for (std::uint32_t label : gt.order)
            want[gt.gray_values.at(label)] += gt.sizes.at(label);
        for (double v : gt.map.values)
            if (v != 0.0) have[int(v)] += 1;
        if (want != have)
            fail(ErrorKind::Integrity,
                 "'" + png_path + "' does not match its sidecar '" + side + "'");
        return gt;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Format, "cannot parse '" + side + "': " + e.what());
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::Format, "'" + side + "': non-numeric instance label");
    }
}

std::vector<std::uint32_t> read_rank_order(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        ordered_json j = parse_json_file(path);
        try {
            return j.at("order").get<std::vector<std::uint32_t>>();
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorKind::Format, "cannot parse '" + path + "': " + e.what());
        }
    }
    return read_ranked_gt(path).order;
}

void write_stack(const NestedStack& stack, const std::string& stem) {
    for (int i = 0; i < stack.n_slices(); ++i)
        write_binary_mask(stack.slices[i],
                          stem + ".slice" + std::to_string(i + 1) + ".png");
}

NestedStack read_stack(const std::string& stem) {
    std::vector<ImageGrid> slices;
    for (int i = 1;; ++i) {
        std::string path = stem + ".slice" + std::to_string(i) + ".png";
        if (!fs::exists(path)) break;
        slices.push_back(read_binary_mask(path));
    }
    if (slices.empty())
        fail(ErrorKind::Io, "no slices found for stack stem '" + stem + "'");
    return NestedStack::from_slices(std::move(slices));
}

double sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

std::string format_sig9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out) fail(ErrorKind::Io, "cannot finish writing '" + path + "'");
}

void write_curve_csv(const std::string& path,
                     const std::vector<CurvePoint>& points) {
    std::string out = "threshold,precision,recall,tpr,fpr\n";
    for (const CurvePoint& p : points) {
        out += format_sig9(p.threshold);
        out += ',';
        out += format_sig9(p.precision);
        out += ',';
        out += format_sig9(p.recall);
        out += ',';
        out += format_sig9(p.tpr);
        out += ',';
        out += format_sig9(p.fpr);
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<std::string> list_stems(const std::string& dir,
                                    const std::string& suffix) {
    if (!fs::is_directory(dir))
        fail(ErrorKind::Io, "'" + dir + "' is not a directory");
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (name.size() <= suffix.size() ||
            name.substr(name.size() - suffix.size()) != suffix)
            continue;
        stems.push_back(name.substr(0, name.size() - suffix.size()));
    }
    std::sort(stems.begin(), stems.end());
    return stems;
}

}  // namespace salrank
