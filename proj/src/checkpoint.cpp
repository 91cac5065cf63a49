#include "sfnav/checkpoint.hpp"

#include <cstring>
#include <fstream>

namespace sfnav {

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw CheckpointError("checkpoint truncated while reading u32");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_f32(std::ostream& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    write_u32(out, bits);
}

float read_f32(std::istream& in) {
    const std::uint32_t bits = read_u32(in);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

void write_record(std::ostream& out, const std::string& name, const nn::Tensor& t) {
    write_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_u32(out, static_cast<std::uint32_t>(t.rank()));
    for (nn::Index d : t.shape) write_u32(out, static_cast<std::uint32_t>(d));
    for (double v : t.data) write_f32(out, static_cast<float>(v));
}

} // namespace

const nn::Tensor& LoadedCheckpoint::at(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) {
        throw CheckpointError("checkpoint is missing parameter: " + name);
    }
    return it->second;
}

void save_checkpoint(const std::string& path, const CheckpointMeta& meta,
                     const std::vector<NamedTensorConst>& params) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CheckpointError("cannot open checkpoint for writing: " + path);
        out.write("SFRL", 4);
        write_u32(out, kCheckpointVersion);
        write_u32(out, meta.phi_dim);
        write_u32(out, meta.history);
        write_u32(out, meta.rays);
        write_u32(out, meta.num_actions);
        write_u32(out, meta.task_count);
        write_u32(out, meta.current_task);
        for (const NamedTensorConst& p : params) write_record(out, p.name, *p.tensor);
        if (!out) throw CheckpointError("write failure on checkpoint: " + path);
    }
    // atomic replace keeps the previous checkpoint intact on interruption
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw CheckpointError("cannot move checkpoint into place: " + path);
    }
}

void save_checkpoint(const std::string& path, const CheckpointMeta& meta,
                     const std::vector<nn::NamedParam>& params) {
    std::vector<NamedTensorConst> consts;
    consts.reserve(params.size());
    for (const nn::NamedParam& p : params) consts.push_back({p.name, p.tensor});
    save_checkpoint(path, meta, consts);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "SFRL", 4) != 0) {
        throw CheckpointError("bad checkpoint magic in " + path);
    }
    const std::uint32_t version = read_u32(in);
    if (version != kCheckpointVersion) {
        throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
    }
    LoadedCheckpoint ck;
    ck.meta.phi_dim = read_u32(in);
    ck.meta.history = read_u32(in);
    ck.meta.rays = read_u32(in);
    ck.meta.num_actions = read_u32(in);
    ck.meta.task_count = read_u32(in);
    ck.meta.current_task = read_u32(in);

    while (true) {
        in.peek();
        if (in.eof()) break;
        const std::uint32_t name_len = read_u32(in);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        if (!in) throw CheckpointError("checkpoint truncated in record name");
        const std::uint32_t rank = read_u32(in);
        std::vector<nn::Index> shape(rank);
        for (std::uint32_t i = 0; i < rank; ++i) shape[i] = read_u32(in);
        nn::Tensor t = nn::Tensor::zeros(shape);
        for (double& v : t.data) v = static_cast<double>(read_f32(in));
        ck.order.push_back(name);
        ck.params.emplace(std::move(name), std::move(t));
    }
    return ck;
}

} // namespace sfnav
