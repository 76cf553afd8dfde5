#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccrig/core/mat.hpp"
#include "ccrig/pipeline/dataset.hpp"

namespace ccrig {

// Binary dataset container ("CCRD"). Little-endian; images quantized to u8
// (part of the format), actions exact f32. save→load→save is byte-identical.
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

// Checkpoint ("CCKP"): text manifest naming every parameter blob (name,
// rows, cols, byte offset) followed by concatenated f32 LE blobs.
void save_checkpoint(const std::string& path, const std::string& kind, uint64_t config_hash,
                     const std::vector<std::pair<std::string, Mat*>>& params);

struct CheckpointInfo {
    std::string kind;
    uint64_t config_hash = 0;
};

// Fills `params` by name; shapes must match. A config-hash mismatch is
// reported by the return value (callers warn, not fail).
CheckpointInfo load_checkpoint(const std::string& path,
                               const std::vector<std::pair<std::string, Mat*>>& params);

// Reads just the manifest header (kind + hash) without touching blobs.
CheckpointInfo peek_checkpoint(const std::string& path);

// write-temp-then-rename used by every writer above
void atomic_write_file(const std::string& path, const std::string& bytes);

}  // namespace ccrig
