#include <stdio.h>
#include <string.h>
#include "cactus_ffi.h"

int main(void) {
    char *nf = NULL;
    if (cactus_normalize(CACTUS_FAMILY_AFFINE, 3, "1,2;1,3", &nf) != CACTUS_STATUS_OK) return 1;
    int bad = strcmp(nf, "1,3;2,3") != 0;
    cactus_string_free(nf);
    if (bad) return 2;

    CactusBall *ball = NULL;
    if (cactus_ball_new(CACTUS_FAMILY_AFFINE, 3, 2, 0, &ball) != CACTUS_STATUS_OK) return 3;
    size_t n = 0;
    cactus_ball_vertex_count(ball, &n);
    bool passed = false;
    cactus_verify(ball, CACTUS_CHECK_SQUARES, 0, &passed, NULL);
    cactus_ball_free(ball);
    if (n != 31 || !passed) return 4;

    if (cactus_normalize(CACTUS_FAMILY_AFFINE, 3, "9,9", &nf) != CACTUS_STATUS_INVALID_ARGUMENT) return 5;
    if (cactus_last_error() == NULL) return 6;
    printf("ok\n");
    return 0;
}
