#include "gmx/manifest.hpp"

#include <fstream>

#include "json.hpp"

namespace gmx {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
    return p.is_absolute() ? p : base / p;
}

}  // namespace

BatchManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot open manifest " + path.string());

    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError("manifest " + path.string() +
                            " is not valid JSON: " + e.what());
    }

    BatchManifest manifest;
    if (!doc.contains("num_classes") ||
        !doc["num_classes"].is_number_integer())
        throw ManifestError("manifest is missing integer num_classes");
    manifest.num_classes = doc["num_classes"].get<int>();
    if (manifest.num_classes < 1)
        throw ManifestError("num_classes must be positive");
    if (!doc.contains("items") || !doc["items"].is_array())
        throw ManifestError("manifest is missing items array");

    const std::filesystem::path base = path.parent_path();
    std::size_t index = 0;
    for (const nlohmann::json& entry : doc["items"]) {
        const std::string where = "manifest item " + std::to_string(index);
        if (!entry.contains("image") || !entry["image"].is_string())
            throw ManifestError(where + ": missing image path");
        if (!entry.contains("label") || !entry["label"].is_number_integer())
            throw ManifestError(where + ": missing integer label");

        ManifestItem item;
        item.image = resolve(base, entry["image"].get<std::string>());
        item.label = entry["label"].get<int>();
        if (item.label < 0 || item.label >= manifest.num_classes)
            throw ManifestError(where + ": label " +
                                std::to_string(item.label) +
                                " outside [0, " +
                                std::to_string(manifest.num_classes) + ")");
        if (!std::filesystem::exists(item.image))
            throw ManifestError(where + ": image file " + item.image.string() +
                                " does not exist");
        if (entry.contains("saliency") && !entry["saliency"].is_null()) {
            if (!entry["saliency"].is_string())
                throw ManifestError(where + ": saliency must be a path");
            item.saliency = resolve(base, entry["saliency"].get<std::string>());
            if (!std::filesystem::exists(*item.saliency))
                throw ManifestError(where + ": saliency file " +
                                    item.saliency->string() +
                                    " does not exist");
        }
        manifest.items.push_back(std::move(item));
        ++index;
    }
    return manifest;
}

}  // namespace gmx
