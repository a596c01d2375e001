#pragma once

// Published reference values for the sizing grids, row order as in compute_table().
struct TypeIRef {
  double lambda0, ratio, kappa, margin;
  int n_r;
  double nb_r, qp_r, md;
  int n_d;
  double nb_d, qp_d;
};

struct NiRef {
  double lambda0, ratio, kappa, margin;
  int n_zr, n_rl, n_r, n_ru;
  double sim_r, md;
  int n_dl, n_d, n_du;
  double sim_d, sim_d_ratio_test;
};

struct HeteroRef {
  double lambda0, kappa0, lambda1, kappa1, margin;
  int n_rl, n_r, n_ru;
  double sim_r, md;
  int n_dl, n_d, n_du;
  double sim_d, sim_d_ratio_test;
};

struct EquivRef {
  double lambda0, ratio, kappa;
  int n_zr, n_rl, n_r, n_ru;
  double sim_r;
  int n_dl, n_d, n_du;
  double sim_d;
};

inline constexpr TypeIRef kTypeIDesign1[] = {
    {0.6, 0.65, 1.0, 1.2, 192, 2.61, 2.87, 0.0882, 198, 2.65, 2.95},
    {0.6, 0.80, 1.0, 1.2, 412, 2.49, 2.79, 0.0978, 416, 2.59, 2.92},
    {0.6, 0.95, 1.0, 1.2, 1185, 2.47, 2.70, 0.1066, 1186, 2.53, 2.82},
    {0.6, 1.00, 1.0, 1.2, 1921, 2.46, 2.81, 0.1094, 1921, 2.73, 3.05},
    {0.6, 1.05, 1.0, 1.2, 3540, 2.37, 2.62, 0.1121, 3543, 2.54, 2.83},
    {0.6, 0.65, 1.0, 1.3, 150, 2.80, 3.05, 0.1269, 155, 2.97, 3.36},
    {0.6, 0.80, 1.0, 1.3, 288, 2.66, 3.03, 0.1408, 291, 2.70, 3.08},
    {0.6, 0.95, 1.0, 1.3, 658, 2.48, 2.76, 0.1534, 658, 2.83, 3.09},
    {0.6, 1.00, 1.0, 1.3, 928, 2.69, 2.98, 0.1574, 928, 2.68, 3.00},
    {0.6, 1.05, 1.0, 1.3, 1384, 2.48, 2.77, 0.1613, 1385, 2.55, 2.91},
    {0.9, 0.65, 1.5, 1.2, 202, 2.55, 2.98, 0.1323, 212, 2.70, 3.32},
    {0.9, 0.80, 1.5, 1.2, 442, 2.63, 3.08, 0.1468, 449, 2.61, 3.04},
    {0.9, 0.95, 1.5, 1.2, 1294, 2.51, 2.94, 0.1599, 1295, 2.64, 3.04},
    {0.9, 1.00, 1.5, 1.2, 2107, 2.46, 2.88, 0.1641, 2107, 2.54, 2.89},
    {0.9, 1.05, 1.5, 1.2, 3900, 2.41, 2.87, 0.1681, 3904, 2.49, 2.92},
    {0.9, 0.65, 1.5, 1.3, 158, 2.75, 3.22, 0.1904, 166, 2.78, 3.39},
    {0.9, 0.80, 1.5, 1.3, 309, 2.58, 3.00, 0.2112, 313, 2.79, 3.28},
    {0.9, 0.95, 1.5, 1.3, 718, 2.68, 3.12, 0.2301, 719, 2.80, 3.28},
    {0.9, 1.00, 1.5, 1.3, 1018, 2.48, 2.80, 0.2361, 1018, 2.84, 3.26},
    {0.9, 1.05, 1.5, 1.3, 1525, 2.60, 3.00, 0.2420, 1526, 2.78, 3.14},
};

inline constexpr TypeIRef kTypeIDesign2[] = {
    {0.6, 0.65, 1.0, 1.2, 176, 2.81, 3.59, 0.0882, 183, 2.72, 3.55},
    {0.6, 0.80, 1.0, 1.2, 381, 2.52, 3.40, 0.0978, 385, 2.60, 3.39},
    {0.6, 0.95, 1.0, 1.2, 1102, 2.43, 3.25, 0.1066, 1103, 2.61, 3.48},
    {0.6, 1.00, 1.0, 1.2, 1789, 2.61, 3.44, 0.1094, 1789, 2.60, 3.50},
    {0.6, 1.05, 1.0, 1.2, 3302, 2.50, 3.32, 0.1121, 3304, 2.47, 3.30},
    {0.6, 0.65, 1.0, 1.3, 138, 2.81, 3.68, 0.1269, 143, 2.86, 3.69},
    {0.6, 0.80, 1.0, 1.3, 266, 2.72, 3.50, 0.1408, 269, 2.85, 3.81},
    {0.6, 0.95, 1.0, 1.3, 611, 2.62, 3.35, 0.1534, 612, 2.62, 3.43},
    {0.6, 1.00, 1.0, 1.3, 864, 2.49, 3.36, 0.1574, 864, 2.64, 3.49},
    {0.6, 1.05, 1.0, 1.3, 1291, 2.37, 3.17, 0.1613, 1292, 2.64, 3.38},
    {0.9, 0.65, 1.5, 1.2, 194, 2.58, 3.76, 0.1323, 204, 2.70, 3.95},
    {0.9, 0.80, 1.5, 1.2, 427, 2.53, 3.70, 0.1468, 434, 2.59, 3.67},
    {0.9, 0.95, 1.5, 1.2, 1255, 2.42, 3.59, 0.1599, 1256, 2.53, 3.66},
    {0.9, 1.00, 1.5, 1.2, 2045, 2.36, 3.59, 0.1641, 2045, 2.49, 3.55},
    {0.9, 1.05, 1.5, 1.2, 3789, 2.40, 3.35, 0.1681, 3793, 2.63, 3.66},
    {0.9, 0.65, 1.5, 1.3, 152, 2.78, 3.92, 0.1904, 160, 2.85, 4.14},
    {0.9, 0.80, 1.5, 1.3, 298, 2.61, 3.69, 0.2112, 303, 2.74, 4.08},
    {0.9, 0.95, 1.5, 1.3, 696, 2.65, 3.79, 0.2301, 697, 2.97, 3.93},
    {0.9, 1.00, 1.5, 1.3, 988, 2.48, 3.57, 0.2361, 988, 2.69, 3.91},
    {0.9, 1.05, 1.5, 1.3, 1481, 2.57, 3.57, 0.2420, 1483, 2.61, 3.74},
};

inline constexpr NiRef kNiDesign1[] = {
    {0.6, 0.65, 1.0, 1.2, 182, 186, 192, 194, 80.47, 0.0882, 191, 198, 200, 81.45, 80.29},
    {0.6, 0.80, 1.0, 1.2, 396, 397, 412, 416, 80.50, 0.0978, 401, 416, 420, 80.29, 80.65},
    {0.6, 0.95, 1.0, 1.2, 1143, 1142, 1185, 1197, 79.25, 0.1066, 1143, 1186, 1198, 80.73, 79.53},
    {0.6, 1.00, 1.0, 1.2, 1853, 1851, 1921, 1941, 79.30, 0.1094, 1851, 1921, 1941, 79.38, 79.38},
    {0.6, 1.05, 1.0, 1.2, 3415, 3410, 3540, 3578, 79.77, 0.1121, 3412, 3543, 3580, 79.82, 79.61},
    {0.6, 0.65, 1.0, 1.3, 143, 145, 150, 152, 80.66, 0.1269, 150, 155, 157, 81.68, 80.78},
    {0.6, 0.80, 1.0, 1.3, 276, 277, 288, 290, 80.55, 0.1408, 280, 291, 293, 81.22, 80.83},
    {0.6, 0.95, 1.0, 1.3, 635, 634, 658, 664, 80.49, 0.1534, 634, 658, 665, 80.73, 80.73},
    {0.6, 1.00, 1.0, 1.3, 897, 894, 928, 938, 79.65, 0.1574, 894, 928, 938, 79.74, 79.74},
    {0.6, 1.05, 1.0, 1.3, 1337, 1333, 1384, 1399, 80.55, 0.1613, 1334, 1385, 1400, 79.94, 80.64},
    {0.9, 0.65, 1.5, 1.2, 191, 194, 202, 206, 81.41, 0.1323, 203, 212, 216, 82.18, 81.23},
    {0.9, 0.80, 1.5, 1.2, 423, 424, 442, 452, 80.03, 0.1468, 430, 449, 458, 81.56, 80.09},
    {0.9, 0.95, 1.5, 1.2, 1241, 1241, 1294, 1323, 79.71, 0.1599, 1242, 1295, 1325, 80.07, 79.77},
    {0.9, 1.00, 1.5, 1.2, 2022, 2021, 2107, 2156, 79.83, 0.1641, 2021, 2107, 2156, 79.81, 79.81},
    {0.9, 1.05, 1.5, 1.2, 3743, 3740, 3900, 3993, 80.24, 0.1681, 3744, 3904, 3997, 79.62, 80.12},
    {0.9, 0.65, 1.5, 1.3, 149, 152, 158, 161, 80.84, 0.1904, 159, 166, 169, 81.82, 80.66},
    {0.9, 0.80, 1.5, 1.3, 295, 296, 309, 315, 80.78, 0.2112, 301, 313, 320, 81.25, 80.56},
    {0.9, 0.95, 1.5, 1.3, 689, 689, 718, 734, 80.37, 0.2301, 689, 719, 735, 79.94, 80.49},
    {0.9, 1.00, 1.5, 1.3, 977, 976, 1018, 1042, 79.80, 0.2361, 976, 1018, 1042, 79.95, 79.95},
    {0.9, 1.05, 1.5, 1.3, 1464, 1462, 1525, 1561, 80.15, 0.2420, 1464, 1526, 1563, 79.90, 80.45},
};

inline constexpr NiRef kNiDesign2[] = {
    {0.6, 0.65, 1.0, 1.2, 160, 163, 176, 182, 80.47, 0.0882, 169, 183, 190, 81.86, 80.18},
    {0.6, 0.80, 1.0, 1.2, 350, 351, 381, 396, 79.66, 0.0978, 355, 385, 401, 80.64, 79.54},
    {0.6, 0.95, 1.0, 1.2, 1016, 1016, 1102, 1149, 80.81, 0.1066, 1016, 1103, 1150, 80.06, 80.80},
    {0.6, 1.00, 1.0, 1.2, 1650, 1648, 1789, 1868, 79.97, 0.1094, 1648, 1789, 1868, 79.74, 79.74},
    {0.6, 1.05, 1.0, 1.2, 3045, 3042, 3302, 3450, 79.78, 0.1121, 3044, 3304, 3453, 80.21, 79.44},
    {0.6, 0.65, 1.0, 1.3, 125, 128, 138, 143, 81.15, 0.1269, 133, 143, 149, 81.98, 81.02},
    {0.6, 0.80, 1.0, 1.3, 244, 245, 266, 276, 79.93, 0.1408, 248, 269, 280, 81.12, 80.27},
    {0.6, 0.95, 1.0, 1.3, 564, 564, 611, 638, 79.94, 0.1534, 564, 612, 638, 79.85, 80.04},
    {0.6, 1.00, 1.0, 1.3, 798, 796, 864, 902, 80.00, 0.1574, 796, 864, 902, 79.75, 79.75},
    {0.6, 1.05, 1.0, 1.3, 1192, 1189, 1291, 1349, 81.22, 0.1613, 1190, 1292, 1350, 80.13, 80.94},
    {0.9, 0.65, 1.5, 1.2, 176, 178, 194, 208, 79.88, 0.1323, 188, 204, 220, 82.48, 79.66},
    {0.9, 0.80, 1.5, 1.2, 392, 394, 427, 460, 80.35, 0.1468, 400, 434, 468, 80.64, 80.30},
    {0.9, 0.95, 1.5, 1.2, 1157, 1157, 1255, 1357, 79.86, 0.1599, 1158, 1256, 1358, 80.38, 80.18},
    {0.9, 1.00, 1.5, 1.2, 1887, 1886, 2045, 2215, 80.10, 0.1641, 1886, 2045, 2215, 80.01, 80.01},
    {0.9, 1.05, 1.5, 1.2, 3497, 3495, 3789, 4108, 80.86, 0.1681, 3499, 3793, 4112, 80.33, 80.74},
    {0.9, 0.65, 1.5, 1.3, 138, 140, 152, 162, 80.23, 0.1904, 148, 160, 172, 82.24, 80.12},
    {0.9, 0.80, 1.5, 1.3, 274, 275, 298, 321, 80.23, 0.2112, 279, 303, 327, 80.77, 80.19},
    {0.9, 0.95, 1.5, 1.3, 642, 642, 696, 753, 80.05, 0.2301, 642, 697, 754, 80.02, 80.09},
    {0.9, 1.00, 1.5, 1.3, 912, 911, 988, 1070, 80.23, 0.2361, 911, 988, 1070, 80.18, 80.18},
    {0.9, 1.05, 1.5, 1.3, 1368, 1367, 1481, 1606, 80.13, 0.2420, 1368, 1483, 1608, 79.63, 79.94},
};

inline constexpr HeteroRef kHetero[] = {
    {0.6, 2.0, 0.48, 1.0, 1.3, 344, 358, 363, 79.48, 0.1408, 363, 378, 384, 79.66, 82.19},
    {0.6, 1.0, 0.48, 2.0, 1.3, 344, 358, 363, 80.95, 0.1408, 333, 347, 351, 80.83, 79.70},
    {0.6, 2.0, 0.48, 0.5, 1.3, 311, 322, 327, 79.34, 0.1408, 337, 349, 355, 79.38, 82.64},
    {0.6, 0.5, 0.48, 2.0, 1.3, 311, 322, 327, 80.62, 0.1408, 292, 302, 306, 80.44, 78.67},
    {1.0, 2.0, 0.80, 1.0, 1.3, 286, 298, 306, 79.71, 0.2347, 306, 319, 327, 79.85, 82.46},
    {1.0, 1.0, 0.80, 2.0, 1.3, 286, 299, 306, 80.62, 0.2347, 276, 288, 294, 80.72, 79.00},
    {1.0, 2.0, 0.80, 0.5, 1.3, 253, 263, 269, 78.69, 0.2347, 279, 290, 298, 79.18, 83.69},
    {1.0, 0.5, 0.80, 2.0, 1.3, 253, 263, 269, 81.22, 0.2347, 234, 244, 249, 81.03, 78.19},
    {0.6, 2.0, 0.54, 1.0, 1.3, 584, 607, 617, 79.36, 0.1493, 598, 622, 632, 80.16, 81.28},
    {0.6, 1.0, 0.54, 2.0, 1.3, 584, 608, 617, 80.31, 0.1493, 573, 597, 606, 80.13, 79.29},
    {0.6, 2.0, 0.54, 0.5, 1.3, 526, 545, 553, 78.85, 0.1493, 546, 566, 575, 80.31, 81.64},
    {0.6, 0.5, 0.54, 2.0, 1.3, 526, 546, 553, 80.78, 0.1493, 509, 528, 535, 80.02, 78.71},
    {1.0, 2.0, 0.90, 1.0, 1.3, 490, 510, 523, 79.55, 0.2489, 504, 525, 538, 80.27, 82.04},
    {1.0, 1.0, 0.90, 2.0, 1.3, 490, 510, 523, 80.83, 0.2489, 479, 499, 512, 80.35, 79.26},
    {1.0, 2.0, 0.90, 0.5, 1.3, 432, 449, 459, 78.74, 0.2489, 452, 469, 481, 80.12, 82.79},
    {1.0, 0.5, 0.90, 2.0, 1.3, 432, 449, 459, 81.04, 0.2489, 415, 431, 441, 80.04, 78.66},
    {0.6, 2.0, 0.60, 1.0, 1.3, 1122, 1168, 1187, 80.13, 0.1574, 1122, 1168, 1187, 81.40, 81.40},
    {0.6, 1.0, 0.60, 2.0, 1.3, 1122, 1168, 1187, 80.16, 0.1574, 1122, 1168, 1187, 79.13, 79.13},
    {0.6, 2.0, 0.60, 0.5, 1.3, 1008, 1046, 1063, 78.82, 0.1574, 1008, 1046, 1063, 80.82, 80.82},
    {0.6, 0.5, 0.60, 2.0, 1.3, 1008, 1046, 1063, 80.41, 0.1574, 1008, 1046, 1063, 78.60, 78.60},
    {1.0, 2.0, 1.00, 1.0, 1.3, 947, 987, 1012, 80.23, 0.2624, 947, 987, 1012, 81.20, 81.20},
    {1.0, 1.0, 1.00, 2.0, 1.3, 947, 987, 1012, 80.24, 0.2624, 947, 987, 1012, 78.95, 78.95},
    {1.0, 2.0, 1.00, 0.5, 1.3, 833, 866, 888, 79.06, 0.2624, 833, 866, 888, 81.67, 81.67},
    {1.0, 0.5, 1.00, 2.0, 1.3, 833, 866, 888, 80.92, 0.2624, 833, 866, 888, 78.82, 78.82},
};

inline constexpr EquivRef kEquiv[] = {
    {0.6, 1.00, 1.0, 1200, 1197, 1242, 1255, 79.83, 1197, 1242, 1255, 80.12},
    {0.6, 1.05, 1.0, 1386, 1382, 1435, 1451, 79.92, 1383, 1436, 1452, 80.07},
    {0.9, 1.00, 1.5, 1308, 1307, 1363, 1394, 79.75, 1307, 1363, 1394, 79.74},
    {0.9, 1.05, 1.5, 1518, 1516, 1581, 1619, 80.17, 1518, 1583, 1620, 80.10},
    {0.6, 1.00, 1.0, 1068, 1066, 1157, 1208, 80.28, 1066, 1157, 1208, 80.17},
    {0.6, 1.05, 1.0, 1236, 1233, 1339, 1399, 79.75, 1234, 1340, 1400, 80.41},
    {0.9, 1.00, 1.5, 1190, 1189, 1288, 1402, 79.50, 1189, 1288, 1402, 79.28},
    {0.9, 1.05, 1.5, 1418, 1417, 1536, 1666, 79.94, 1418, 1538, 1667, 80.03},
};
