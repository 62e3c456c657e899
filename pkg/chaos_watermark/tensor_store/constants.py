MAGIC = b"CWMT"
FORMAT_VERSION = 1

DTYPE_FLOAT32 = 1
DTYPE_FLOAT64 = 2

# Tag written to the file -> little-endian numpy dtype
DTYPE_TAGS = {
    DTYPE_FLOAT32: "<f4",
    DTYPE_FLOAT64: "<f8",
}

FLATTEN_ROW_MAJOR = "row-major"
TENSOR_SCOPE_KERNEL = "kernel"

MANIFEST_FORMAT_VERSION = 1
