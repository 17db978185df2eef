#include "scnlp/fontkit.hpp"

namespace scnlp {

// 8x8 ASCII glyphs (U+0020..U+007E), public domain, stored as BDF.
std::string_view embedded_font_bdf() {
  static constexpr std::string_view kBdf = R"BDF(STARTFONT 2.1
FONT -embedded-fixed-medium-r-normal--8-80-75-75-c-80-iso10646-1
SIZE 8 75 75
FONTBOUNDINGBOX 8 8 0 -1
STARTPROPERTIES 2
FONT_ASCENT 7
FONT_DESCENT 1
ENDPROPERTIES
CHARS 95
STARTCHAR U+0020
ENCODING 32
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
00
00
00
00
00
00
ENDCHAR
STARTCHAR U+0021
ENCODING 33
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
18
3C
3C
18
18
00
18
00
ENDCHAR
STARTCHAR U+0022
ENCODING 34
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
6C
6C
00
00
00
00
00
00
ENDCHAR
STARTCHAR U+0023
ENCODING 35
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
6C
6C
FE
6C
FE
6C
6C
00
ENDCHAR
STARTCHAR U+0024
ENCODING 36
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
30
7C
C0
78
0C
F8
30
00
ENDCHAR
STARTCHAR U+0025
ENCODING 37
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
C6
CC
18
30
66
C6
00
ENDCHAR
STARTCHAR U+0026
ENCODING 38
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
38
6C
38
76
DC
CC
76
00
ENDCHAR
STARTCHAR U+0027
ENCODING 39
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
60
60
C0
00
00
00
00
00
ENDCHAR
STARTCHAR U+0028
ENCODING 40
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
18
30
60
60
60
30
18
00
ENDCHAR
STARTCHAR U+0029
ENCODING 41
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
60
30
18
18
18
30
60
00
ENDCHAR
STARTCHAR U+002A
ENCODING 42
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
66
3C
FF
3C
66
00
00
ENDCHAR
STARTCHAR U+002B
ENCODING 43
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
30
30
FC
30
30
00
00
ENDCHAR
STARTCHAR U+002C
ENCODING 44
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
00
00
00
30
30
60
ENDCHAR
STARTCHAR U+002D
ENCODING 45
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
00
FC
00
00
00
00
ENDCHAR
STARTCHAR U+002E
ENCODING 46
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
00
00
00
30
30
00
ENDCHAR
STARTCHAR U+002F
ENCODING 47
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
06
0C
18
30
60
C0
80
00
ENDCHAR
STARTCHAR U+0030
ENCODING 48
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
7C
C6
CE
DE
F6
E6
7C
00
ENDCHAR
STARTCHAR U+0031
ENCODING 49
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
30
70
30
30
30
30
FC
00
ENDCHAR
STARTCHAR U+0032
ENCODING 50
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
CC
0C
38
60
CC
FC
00
ENDCHAR
STARTCHAR U+0033
ENCODING 51
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
CC
0C
38
0C
CC
78
00
ENDCHAR
STARTCHAR U+0034
ENCODING 52
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
1C
3C
6C
CC
FE
0C
1E
00
ENDCHAR
STARTCHAR U+0035
ENCODING 53
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FC
C0
F8
0C
0C
CC
78
00
ENDCHAR
STARTCHAR U+0036
ENCODING 54
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
38
60
C0
F8
CC
CC
78
00
ENDCHAR
STARTCHAR U+0037
ENCODING 55
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FC
CC
0C
18
30
30
30
00
ENDCHAR
STARTCHAR U+0038
ENCODING 56
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
CC
CC
78
CC
CC
78
00
ENDCHAR
STARTCHAR U+0039
ENCODING 57
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
CC
CC
7C
0C
18
70
00
ENDCHAR
STARTCHAR U+003A
ENCODING 58
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
30
30
00
00
30
30
00
ENDCHAR
STARTCHAR U+003B
ENCODING 59
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
30
30
00
00
30
30
60
ENDCHAR
STARTCHAR U+003C
ENCODING 60
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
18
30
60
C0
60
30
18
00
ENDCHAR
STARTCHAR U+003D
ENCODING 61
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
FC
00
00
FC
00
00
ENDCHAR
STARTCHAR U+003E
ENCODING 62
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
60
30
18
0C
18
30
60
00
ENDCHAR
STARTCHAR U+003F
ENCODING 63
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
CC
0C
18
30
00
30
00
ENDCHAR
STARTCHAR U+0040
ENCODING 64
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
7C
C6
DE
DE
DE
C0
78
00
ENDCHAR
STARTCHAR U+0041
ENCODING 65
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
30
78
CC
CC
FC
CC
CC
00
ENDCHAR
STARTCHAR U+0042
ENCODING 66
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FC
66
66
7C
66
66
FC
00
ENDCHAR
STARTCHAR U+0043
ENCODING 67
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
3C
66
C0
C0
C0
66
3C
00
ENDCHAR
STARTCHAR U+0044
ENCODING 68
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
F8
6C
66
66
66
6C
F8
00
ENDCHAR
STARTCHAR U+0045
ENCODING 69
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FE
62
68
78
68
62
FE
00
ENDCHAR
STARTCHAR U+0046
ENCODING 70
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FE
62
68
78
68
60
F0
00
ENDCHAR
STARTCHAR U+0047
ENCODING 71
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
3C
66
C0
C0
CE
66
3E
00
ENDCHAR
STARTCHAR U+0048
ENCODING 72
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
CC
CC
CC
FC
CC
CC
CC
00
ENDCHAR
STARTCHAR U+0049
ENCODING 73
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
30
30
30
30
30
78
00
ENDCHAR
STARTCHAR U+004A
ENCODING 74
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
1E
0C
0C
0C
CC
CC
78
00
ENDCHAR
STARTCHAR U+004B
ENCODING 75
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
E6
66
6C
78
6C
66
E6
00
ENDCHAR
STARTCHAR U+004C
ENCODING 76
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
F0
60
60
60
62
66
FE
00
ENDCHAR
STARTCHAR U+004D
ENCODING 77
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
C6
EE
FE
FE
D6
C6
C6
00
ENDCHAR
STARTCHAR U+004E
ENCODING 78
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
C6
E6
F6
DE
CE
C6
C6
00
ENDCHAR
STARTCHAR U+004F
ENCODING 79
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
38
6C
C6
C6
C6
6C
38
00
ENDCHAR
STARTCHAR U+0050
ENCODING 80
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FC
66
66
7C
60
60
F0
00
ENDCHAR
STARTCHAR U+0051
ENCODING 81
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
CC
CC
CC
DC
78
1C
00
ENDCHAR
STARTCHAR U+0052
ENCODING 82
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FC
66
66
7C
6C
66
E6
00
ENDCHAR
STARTCHAR U+0053
ENCODING 83
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
CC
E0
70
1C
CC
78
00
ENDCHAR
STARTCHAR U+0054
ENCODING 84
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FC
B4
30
30
30
30
78
00
ENDCHAR
STARTCHAR U+0055
ENCODING 85
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
CC
CC
CC
CC
CC
CC
FC
00
ENDCHAR
STARTCHAR U+0056
ENCODING 86
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
CC
CC
CC
CC
CC
78
30
00
ENDCHAR
STARTCHAR U+0057
ENCODING 87
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
C6
C6
C6
D6
FE
EE
C6
00
ENDCHAR
STARTCHAR U+0058
ENCODING 88
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
C6
C6
6C
38
38
6C
C6
00
ENDCHAR
STARTCHAR U+0059
ENCODING 89
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
CC
CC
CC
78
30
30
78
00
ENDCHAR
STARTCHAR U+005A
ENCODING 90
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
FE
C6
8C
18
32
66
FE
00
ENDCHAR
STARTCHAR U+005B
ENCODING 91
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
60
60
60
60
60
78
00
ENDCHAR
STARTCHAR U+005C
ENCODING 92
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
C0
60
30
18
0C
06
02
00
ENDCHAR
STARTCHAR U+005D
ENCODING 93
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
78
18
18
18
18
18
78
00
ENDCHAR
STARTCHAR U+005E
ENCODING 94
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
10
38
6C
C6
00
00
00
00
ENDCHAR
STARTCHAR U+005F
ENCODING 95
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
00
00
00
00
00
FF
ENDCHAR
STARTCHAR U+0060
ENCODING 96
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
30
30
18
00
00
00
00
00
ENDCHAR
STARTCHAR U+0061
ENCODING 97
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
78
0C
7C
CC
76
00
ENDCHAR
STARTCHAR U+0062
ENCODING 98
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
E0
60
60
7C
66
66
DC
00
ENDCHAR
STARTCHAR U+0063
ENCODING 99
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
78
CC
C0
CC
78
00
ENDCHAR
STARTCHAR U+0064
ENCODING 100
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
1C
0C
0C
7C
CC
CC
76
00
ENDCHAR
STARTCHAR U+0065
ENCODING 101
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
78
CC
FC
C0
78
00
ENDCHAR
STARTCHAR U+0066
ENCODING 102
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
38
6C
60
F0
60
60
F0
00
ENDCHAR
STARTCHAR U+0067
ENCODING 103
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
76
CC
CC
7C
0C
F8
ENDCHAR
STARTCHAR U+0068
ENCODING 104
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
E0
60
6C
76
66
66
E6
00
ENDCHAR
STARTCHAR U+0069
ENCODING 105
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
30
00
70
30
30
30
78
00
ENDCHAR
STARTCHAR U+006A
ENCODING 106
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
0C
00
0C
0C
0C
CC
CC
78
ENDCHAR
STARTCHAR U+006B
ENCODING 107
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
E0
60
66
6C
78
6C
E6
00
ENDCHAR
STARTCHAR U+006C
ENCODING 108
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
70
30
30
30
30
30
78
00
ENDCHAR
STARTCHAR U+006D
ENCODING 109
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
CC
FE
FE
D6
C6
00
ENDCHAR
STARTCHAR U+006E
ENCODING 110
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
F8
CC
CC
CC
CC
00
ENDCHAR
STARTCHAR U+006F
ENCODING 111
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
78
CC
CC
CC
78
00
ENDCHAR
STARTCHAR U+0070
ENCODING 112
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
DC
66
66
7C
60
F0
ENDCHAR
STARTCHAR U+0071
ENCODING 113
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
76
CC
CC
7C
0C
1E
ENDCHAR
STARTCHAR U+0072
ENCODING 114
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
DC
76
66
60
F0
00
ENDCHAR
STARTCHAR U+0073
ENCODING 115
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
7C
C0
78
0C
F8
00
ENDCHAR
STARTCHAR U+0074
ENCODING 116
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
10
30
7C
30
30
34
18
00
ENDCHAR
STARTCHAR U+0075
ENCODING 117
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
CC
CC
CC
CC
76
00
ENDCHAR
STARTCHAR U+0076
ENCODING 118
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
CC
CC
CC
78
30
00
ENDCHAR
STARTCHAR U+0077
ENCODING 119
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
C6
D6
FE
FE
6C
00
ENDCHAR
STARTCHAR U+0078
ENCODING 120
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
C6
6C
38
6C
C6
00
ENDCHAR
STARTCHAR U+0079
ENCODING 121
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
CC
CC
CC
7C
0C
F8
ENDCHAR
STARTCHAR U+007A
ENCODING 122
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
00
00
FC
98
30
64
FC
00
ENDCHAR
STARTCHAR U+007B
ENCODING 123
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
1C
30
30
E0
30
30
1C
00
ENDCHAR
STARTCHAR U+007C
ENCODING 124
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
18
18
18
00
18
18
18
00
ENDCHAR
STARTCHAR U+007D
ENCODING 125
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
E0
30
30
1C
30
30
E0
00
ENDCHAR
STARTCHAR U+007E
ENCODING 126
SWIDTH 666 0
DWIDTH 8 0
BBX 8 8 0 -1
BITMAP
76
DC
00
00
00
00
00
00
ENDCHAR
ENDFONT
)BDF";
  return kBdf;
}

}  // namespace scnlp
