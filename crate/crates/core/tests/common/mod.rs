/// `(n, b′(n), a′(n))`: class counts of squares in GL_n and Mat_n over GF(2).
pub const CLASS_COUNTS: [(usize, u64, u64); 60] = [
    (1, 1, 2),
    (2, 2, 4),
    (3, 5, 10),
    (4, 10, 22),
    (5, 20, 46),
    (6, 41, 96),
    (7, 82, 198),
    (8, 166, 406),
    (9, 334, 826),
    (10, 667, 1668),
    (11, 1336, 3362),
    (12, 2682, 6770),
    (13, 5360, 13590),
    (14, 10724, 27248),
    (15, 21467, 54614),
    (16, 42936, 109378),
    (17, 85876, 218946),
    (18, 171786, 438180),
    (19, 343574, 876738),
    (20, 687184, 1753998),
    (21, 1374427, 3508726),
    (22, 2748852, 7018368),
    (23, 5497766, 14038006),
    (24, 10995706, 28077846),
    (25, 21991402, 56157954),
    (26, 43982908, 112318900),
    (27, 87966150, 224642090),
    (28, 175932383, 449289666),
    (29, 351864964, 898586438),
    (30, 703730584, 1797182704),
    (31, 1407461288, 3594378014),
    (32, 2814923196, 7188772666),
    (33, 5629847656, 14377567834),
    (34, 11259695532, 28755164100),
    (35, 22519392276, 57510365698),
    (36, 45038787489, 115020782350),
    (37, 90077575358, 230041628622),
    (38, 180155153036, 460083340304),
    (39, 360310311906, 920166792942),
    (40, 720620625522, 1840333728182),
    (41, 1441241255486, 3680667639522),
    (42, 2882482522524, 7361335523444),
    (43, 5764965048250, 14722671356642),
    (44, 11529930107318, 29445343113738),
    (45, 23059860237589, 58890686756910),
    (46, 46119720481194, 117781374180336),
    (47, 92239440983766, 235562749221166),
    (48, 184478882017076, 471125499580570),
    (49, 368957764045976, 942251000588770),
    (50, 737915528134398, 1884502003008980),
    (51, 1475831056367066, 3769004008432714),
    (52, 2951662112765356, 7538008019902670),
    (53, 5903324225614736, 15076016043685054),
    (54, 11806648451425570, 30152032092453552),
    (55, 23613296902912949, 60304064191298614),
    (56, 47226593806008646, 120608128390767918),
    (57, 94453187612408280, 241216256792193274),
    (58, 188906375224938380, 482432513597744820),
    (59, 377812750450241204, 964865027212545410),
    (60, 755625500901295794, 1929730054447325946),
];
