#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "clar/data_io.hpp"
#include "clar/pipeline.hpp"

namespace clar::tools {

/// Everything needed to reproduce one clustering run. Stored as a flat
/// `key = value` file; see serialize() for the key set and order.
struct RunManifest {
    /// Directory holding X.csv/X.bin (+ labels.csv), or `synth:<spec file>`.
    std::string dataset;
    SolverConfig solver;
    int phi = 2;
    int k = 0;  // 0: infer from the dataset's labels
    std::uint64_t seed = 0;
    int restarts = 50;
    std::string out = "out";
    bool timing = true;  // false writes 0 for every timing field

    void validate() const;
    PipelineOptions pipeline_options() const;

    /// Byte-stable: parse(serialize()) reserializes to the same text.
    std::string serialize() const;
    static RunManifest parse(const KeyValues& kv, const std::string& source = "<manifest>");
};

RunManifest load_manifest(const std::filesystem::path& path);

/// Loads or generates the referenced dataset. `replicate` shifts the seed of
/// a synthetic spec so repeated runs see fresh data; it is ignored for
/// datasets read from disk.
Dataset resolve_dataset(const std::string& ref, int replicate = 0);

}  // namespace clar::tools
