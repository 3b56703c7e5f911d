#include <stdio.h>
#include <string.h>
#include "pantscx.h"

int main(void) {
    size_t count = 0;
    if (pantscx_enumerate_count(0, 4, &count) != PANTSCX_STATUS_OK || count != 3) return 1;
    if (pantscx_enumerate_count(0, 1, &count) != PANTSCX_STATUS_DOMAIN) return 2;

    PantscxComplex *c = NULL;
    if (pantscx_build(1, 2, true, 1, &c) != PANTSCX_STATUS_OK) return 3;
    PantscxVerdict v;
    size_t detail = 0;
    if (pantscx_check_simply_connected(c, 1000000, &v, &detail) != PANTSCX_STATUS_OK) return 4;
    if (v != PANTSCX_VERDICT_TRIVIAL) return 5;
    char *dot = pantscx_complex_serialize(c, PANTSCX_FORMAT_DOT);
    if (dot == NULL || strncmp(dot, "graph Sdec_1_2 {", 16) != 0) return 6;
    pantscx_string_free(dot);
    pantscx_complex_free(c);

    PantscxMap *m = NULL;
    if (pantscx_map_psi(2, &m) != PANTSCX_STATUS_OK) return 7;
    bool surjective = false;
    pantscx_map_is_surjective(m, &surjective);
    pantscx_map_free(m);
    if (!surjective) return 8;
    printf("ok\n");
    return 0;
}
