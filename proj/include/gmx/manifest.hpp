#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmx {

class ManifestError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ManifestItem {
    std::filesystem::path image;
    int label = 0;
    std::optional<std::filesystem::path> saliency;

    /// Filename stem of the image, used to derive per-item output names.
    std::string stem() const { return image.stem().string(); }
};

/// Batch description loaded from JSON:
///   {"num_classes": K, "items": [{"image": p, "label": c,
///    "saliency": optional p}, ...]}
/// Relative paths are resolved against the manifest file's directory.
struct BatchManifest {
    int num_classes = 0;
    std::vector<ManifestItem> items;
};

/// Parses and validates a manifest. Labels must lie in [0, num_classes) and
/// every referenced file must exist; errors name the offending item index.
BatchManifest load_manifest(const std::filesystem::path& path);

}  // namespace gmx
