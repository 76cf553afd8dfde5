#include "ccrig/harness/formats.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ccrig/core/errors.hpp"

namespace ccrig {

namespace {

constexpr uint32_t kDatasetVersion = 1;

void put_u16(std::string& out, uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}
void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_f32(std::string& out, float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

struct Reader {
    const std::string& buf;
    size_t pos = 0;

    void need(size_t n) const {
        if (pos + n > buf.size()) throw FormatError("dataset file truncated");
    }
    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(buf[pos++]);
    }
    uint16_t u16() {
        need(2);
        uint16_t v = static_cast<uint8_t>(buf[pos]) | (static_cast<uint16_t>(static_cast<uint8_t>(buf[pos + 1])) << 8);
        pos += 2;
        return v;
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<uint8_t>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    float f32() {
        uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    void bytes(void* dst, size_t n) {
        need(n);
        std::memcpy(dst, buf.data() + pos, n);
        pos += n;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

void atomic_write_file(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write file: " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw FormatError("short write: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw FormatError("rename failed: " + path);
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::string out;
    out.reserve(64 + ds.episodes.size() * (ds.image_dim() + 16));
    out += "CCRD";
    put_u32(out, kDatasetVersion);
    out.push_back(static_cast<char>(ds.env_kind == EnvKind::Nav ? 0 : 1));
    put_u32(out, static_cast<uint32_t>(ds.episodes.size()));
    put_u16(out, static_cast<uint16_t>(ds.width));
    put_u16(out, static_cast<uint16_t>(ds.height));
    put_u16(out, static_cast<uint16_t>(ds.channels));
    for (const EpisodeData& ep : ds.episodes) {
        out.push_back(static_cast<char>(ep.layout_id));
        put_f32(out, ep.color.r);
        put_f32(out, ep.color.g);
        put_f32(out, ep.color.b);
        put_u16(out, static_cast<uint16_t>(ep.actions.size()));
        out.append(reinterpret_cast<const char*>(ep.s0.data()), ep.s0.size());
        for (size_t t = 0; t < ep.actions.size(); ++t) {
            out.append(reinterpret_cast<const char*>(ep.step_images[t].data()), ep.step_images[t].size());
            put_f32(out, ep.actions[t][0]);
            put_f32(out, ep.actions[t][1]);
        }
    }
    atomic_write_file(path, out);
}

Dataset load_dataset(const std::string& path) {
    std::string buf = read_file(path);
    Reader r{buf};
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, "CCRD", 4) != 0) throw FormatError("bad dataset magic in " + path);
    uint32_t version = r.u32();
    if (version != kDatasetVersion)
        throw FormatError("dataset version " + std::to_string(version) + " unsupported");
    Dataset ds;
    uint8_t kind = r.u8();
    if (kind > 1) throw FormatError("bad env kind byte");
    ds.env_kind = kind == 0 ? EnvKind::Nav : EnvKind::Pusher;
    uint32_t episodes = r.u32();
    ds.width = r.u16();
    ds.height = r.u16();
    ds.channels = r.u16();
    if (ds.channels != 3) throw FormatError("dataset must have 3 channels");
    const size_t img_bytes = static_cast<size_t>(ds.width) * ds.height * ds.channels;
    for (uint32_t e = 0; e < episodes; ++e) {
        EpisodeData ep;
        ep.layout_id = r.u8();
        ep.color.r = r.f32();
        ep.color.g = r.f32();
        ep.color.b = r.f32();
        uint16_t steps = r.u16();
        ep.s0.resize(img_bytes);
        r.bytes(ep.s0.data(), img_bytes);
        ep.step_images.resize(steps);
        ep.actions.resize(steps);
        for (uint16_t t = 0; t < steps; ++t) {
            ep.step_images[t].resize(img_bytes);
            r.bytes(ep.step_images[t].data(), img_bytes);
            ep.actions[t][0] = r.f32();
            ep.actions[t][1] = r.f32();
        }
        ds.episodes.push_back(std::move(ep));
    }
    if (r.pos != buf.size()) throw FormatError("trailing bytes in dataset file");
    return ds;
}

void save_checkpoint(const std::string& path, const std::string& kind, uint64_t config_hash,
                     const std::vector<std::pair<std::string, Mat*>>& params) {
    std::string manifest;
    manifest += "CCKP 1\n";
    manifest += "kind " + kind + "\n";
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(config_hash));
    manifest += std::string("config_hash ") + hex + "\n";
    size_t offset = 0;
    for (const auto& [name, m] : params) {
        manifest += "param " + name + " " + std::to_string(m->rows()) + " " +
                    std::to_string(m->cols()) + " " + std::to_string(offset) + "\n";
        offset += m->size() * sizeof(float);
    }
    manifest += "end\n";
    std::string out = manifest;
    out.reserve(out.size() + offset);
    for (const auto& [name, m] : params)
        out.append(reinterpret_cast<const char*>(m->data()), m->size() * sizeof(float));
    atomic_write_file(path, out);
}

namespace {

struct ManifestEntry {
    std::string name;
    int rows, cols;
    size_t offset;
};

struct Manifest {
    CheckpointInfo info;
    std::vector<ManifestEntry> entries;
    size_t blob_base = 0;
};

Manifest parse_manifest(const std::string& buf, const std::string& path) {
    Manifest m;
    std::istringstream in(buf);
    std::string line;
    if (!std::getline(in, line) || line != "CCKP 1")
        throw FormatError("bad checkpoint header in " + path);
    while (std::getline(in, line)) {
        if (line == "end") {
            m.blob_base = static_cast<size_t>(in.tellg());
            return m;
        }
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "kind") {
            ls >> m.info.kind;
        } else if (tag == "config_hash") {
            std::string hex;
            ls >> hex;
            m.info.config_hash = std::stoull(hex, nullptr, 16);
        } else if (tag == "param") {
            ManifestEntry e;
            ls >> e.name >> e.rows >> e.cols >> e.offset;
            if (!ls) throw FormatError("bad param line in " + path + ": " + line);
            m.entries.push_back(e);
        } else {
            throw FormatError("unknown manifest tag '" + tag + "' in " + path);
        }
    }
    throw FormatError("checkpoint manifest missing 'end' in " + path);
}

}  // namespace

CheckpointInfo load_checkpoint(const std::string& path,
                               const std::vector<std::pair<std::string, Mat*>>& params) {
    std::string buf = read_file(path);
    Manifest m = parse_manifest(buf, path);
    if (m.entries.size() != params.size())
        throw FormatError("checkpoint lists " + std::to_string(m.entries.size()) + " params, expected " +
                          std::to_string(params.size()));
    for (size_t i = 0; i < params.size(); ++i) {
        const auto& [name, mat] = params[i];
        const ManifestEntry& e = m.entries[i];
        if (e.name != name) throw FormatError("checkpoint param '" + e.name + "' where '" + name + "' expected");
        if (e.rows != mat->rows() || e.cols != mat->cols())
            throw FormatError("checkpoint param " + name + " has shape " + std::to_string(e.rows) + "x" +
                              std::to_string(e.cols) + ", expected " + std::to_string(mat->rows()) + "x" +
                              std::to_string(mat->cols()));
        size_t nbytes = mat->size() * sizeof(float);
        if (m.blob_base + e.offset + nbytes > buf.size()) throw FormatError("checkpoint blobs truncated");
        std::memcpy(mat->data(), buf.data() + m.blob_base + e.offset, nbytes);
    }
    return m.info;
}

CheckpointInfo peek_checkpoint(const std::string& path) {
    return parse_manifest(read_file(path), path).info;
}

}  // namespace ccrig
