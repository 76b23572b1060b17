#include <stdio.h>
#include <string.h>

#include "rsdesign.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);   \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    RsdDesign *d = NULL;
    size_t n, w, q, rows;
    uint64_t lambda = 0;

    CHECK(rsd_design_fixture("fig1", &d) == RSD_STATUS_OK);
    CHECK(rsd_design_dims(d, &n, &w, &q, &rows) == RSD_STATUS_OK);
    CHECK(n == 5 && w == 3 && q == 4 && rows == 10);
    CHECK(rsd_design_verify(d, 2, 1, &lambda) == RSD_STATUS_OK && lambda == 1);
    CHECK(rsd_design_spectral(d, 2, 1) == RSD_STATUS_OK);
    CHECK(rsd_design_verify(d, 3, 1, NULL) == RSD_STATUS_NOT_A_DESIGN);
    CHECK(rsd_last_error_message() != NULL);

    char *text = rsd_design_to_string(d);
    CHECK(text != NULL && strncmp(text, "5 3 4\n", 6) == 0);
    RsdDesign *copy = NULL;
    CHECK(rsd_design_parse(text, &copy) == RSD_STATUS_OK);
    rsd_string_free(text);
    rsd_design_free(copy);
    rsd_design_free(d);

    CHECK(rsd_design_parse("3 2 3\n1 1\n", &d) == RSD_STATUS_PARSE_ERROR);

    uint64_t num, den, fisher;
    CHECK(rsd_bounds(5, 3, 4, 2, 1, &num, &den, &fisher) == RSD_STATUS_OK);
    CHECK(num == 10 && den == 1);

    CHECK(rsd_construct_sts_trivial(7, 4, &d, &lambda) == RSD_STATUS_OK);
    CHECK(rsd_design_dims(d, NULL, NULL, NULL, &rows) == RSD_STATUS_OK && rows == 21);
    rsd_design_free(d);

    uint64_t nodes = 0;
    CHECK(rsd_search(5, 3, 4, 2, 1, 1000000, 1, &d, &nodes) == RSD_STATUS_OK);
    CHECK(rsd_design_verify(d, 2, 1, &lambda) == RSD_STATUS_OK && lambda == 1);
    rsd_design_free(d);

    puts("ok");
    return 0;
}
