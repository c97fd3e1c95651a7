#include "leafplan/codec.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>

#include <jpeglib.h>
#include <png.h>

namespace leafplan {

namespace {

bool looks_like_png(std::span<const std::uint8_t> bytes) {
    static const std::uint8_t magic[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    return bytes.size() >= 8 && std::memcmp(bytes.data(), magic, 8) == 0;
}

bool looks_like_jpeg(std::span<const std::uint8_t> bytes) {
    return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

[[noreturn]] void throw_corrupt(const char* what) {
    throw Error(errc::corrupt_file, what);
}

struct PngReadState {
    std::span<const std::uint8_t> bytes;
    std::size_t offset = 0;
};

void png_read_from_span(png_structp png, png_bytep out, png_size_t n) {
    auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (state->offset + n > state->bytes.size())
        png_error(png, "unexpected end of PNG stream");
    std::memcpy(out, state->bytes.data() + state->offset, n);
    state->offset += n;
}

void png_error_to_exception(png_structp png, png_const_charp msg) {
    // Collected at the setjmp site; libpng requires a longjmp here.
    *static_cast<std::string*>(png_get_error_ptr(png)) = msg;
    png_longjmp(png, 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

RgbImage decode_png(std::span<const std::uint8_t> bytes) {
    std::string error_message;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING,
                                             &error_message,
                                             png_error_to_exception,
                                             png_warning_ignore);
    if (!png)
        throw_corrupt("libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw_corrupt("libpng initialization failed");
    }

    PngReadState state{bytes};
    std::vector<png_bytep> row_pointers;
    std::vector<std::uint8_t> raw;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(errc::corrupt_file, "PNG decode failed: " + error_message);
    }

    png_set_read_fn(png, &state, png_read_from_span);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    if (width == 0 || height == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(errc::zero_dimension, "PNG has a zero dimension");
    }

    // Normalize every variant to 8- or 16-bit RGB without alpha.
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int out_depth = png_get_bit_depth(png, info);
    const std::size_t channels = png_get_channels(png, info);
    if (channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw_corrupt("PNG did not normalize to RGB");
    }

    const std::size_t bytes_per_sample = out_depth == 16 ? 2 : 1;
    const std::size_t stride = width * 3 * bytes_per_sample;
    raw.resize(stride * height);
    row_pointers.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        row_pointers[y] = raw.data() + y * stride;

    png_read_image(png, row_pointers.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    RgbImage img;
    img.width = width;
    img.height = height;
    img.data.resize(static_cast<std::size_t>(width) * height * 3);
    if (out_depth == 16) {
        // Network byte order; reduce to 8 bits with rounding division by 257.
        for (std::size_t i = 0; i < img.data.size(); ++i) {
            const std::uint32_t v =
                (static_cast<std::uint32_t>(raw[2 * i]) << 8) | raw[2 * i + 1];
            img.data[i] = static_cast<std::uint8_t>((v + 128) / 257);
        }
    } else {
        std::memcpy(img.data.data(), raw.data(), img.data.size());
    }
    return img;
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

RgbImage decode_jpeg(std::span<const std::uint8_t> bytes) {
    jpeg_decompress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;

    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw Error(errc::corrupt_file,
                    std::string("JPEG decode failed: ") + err.message);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    if (cinfo.output_width == 0 || cinfo.output_height == 0) {
        jpeg_destroy_decompress(&cinfo);
        throw Error(errc::zero_dimension, "JPEG has a zero dimension");
    }

    RgbImage img;
    img.width = cinfo.output_width;
    img.height = cinfo.output_height;
    img.data.resize(img.width * img.height * 3);

    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = img.data.data() + cinfo.output_scanline * img.width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

void png_write_to_vector(png_structp png, png_bytep data, png_size_t n) {
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + n);
}

void png_flush_noop(png_structp) {}

std::vector<std::uint8_t> encode_png_impl(std::size_t width, std::size_t height,
                                          int color_type,
                                          const std::uint8_t* pixels,
                                          std::size_t stride) {
    std::string error_message;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING,
                                              &error_message,
                                              png_error_to_exception,
                                              png_warning_ignore);
    if (!png)
        throw_corrupt("libpng initialization failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw_corrupt("libpng initialization failed");
    }

    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(errc::corrupt_file, "PNG encode failed: " + error_message);
    }

    png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (std::size_t y = 0; y < height; ++y)
        png_write_row(png, const_cast<png_bytep>(pixels + y * stride));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

} // namespace

RgbImage decode_image(std::span<const std::uint8_t> bytes) {
    if (looks_like_png(bytes))
        return decode_png(bytes);
    if (looks_like_jpeg(bytes))
        return decode_jpeg(bytes);
    throw Error(errc::unsupported_format, "not a PNG or JPEG stream");
}

RgbImage decode_image_file(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return decode_image(bytes);
}

std::vector<std::uint8_t> encode_png(const RgbImage& img) {
    return encode_png_impl(img.width, img.height, PNG_COLOR_TYPE_RGB,
                           img.data.data(), img.width * 3);
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
    return encode_png_impl(img.width, img.height, PNG_COLOR_TYPE_GRAY,
                           img.data.data(), img.width);
}

std::vector<std::uint8_t> encode_png(const BinaryMask& mask) {
    GrayImage gray(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.data.size(); ++i)
        gray.data[i] = mask.data[i] ? 255 : 0;
    return encode_png(gray);
}

namespace {
// Heap-held so the pointer survives the setjmp/longjmp round trip intact.
struct JpegMemDest {
    unsigned char* buf = nullptr;
    unsigned long size = 0;
    ~JpegMemDest() { std::free(buf); }
};
} // namespace

std::vector<std::uint8_t> encode_jpeg(const RgbImage& img, int quality) {
    jpeg_compress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;

    auto dest = std::make_unique<JpegMemDest>();

    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        throw Error(errc::corrupt_file,
                    std::string("JPEG encode failed: ") + err.message);
    }

    jpeg_create_compress(&cinfo);
    jpeg_mem_dest(&cinfo, &dest->buf, &dest->size);
    cinfo.image_width = static_cast<JDIMENSION>(img.width);
    cinfo.image_height = static_cast<JDIMENSION>(img.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);

    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<JSAMPROW>(
            img.data.data() + cinfo.next_scanline * img.width * 3);
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);

    return {dest->buf, dest->buf + dest->size};
}

void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error(errc::corrupt_file, "cannot open for writing: " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f)
        throw Error(errc::corrupt_file, "write failed: " + path.string());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(errc::corrupt_file, "cannot open: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

} // namespace leafplan
