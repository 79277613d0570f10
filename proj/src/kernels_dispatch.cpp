#include "hillspec/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace hillspec::kern {

const KernelTable& active() {
    static const KernelTable* selected = [] {
        const char* mode = std::getenv("HILLSPEC_SIMD");
        if (mode != nullptr && std::strcmp(mode, "scalar") == 0)
            return &scalar_table();
        if (const KernelTable* v = avx2_table())
            return v;
        return &scalar_table();
    }();
    return *selected;
}

} // namespace hillspec::kern
