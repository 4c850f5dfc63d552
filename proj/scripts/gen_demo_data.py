#!/usr/bin/env python3
"""Regenerate the bundled demo resource tables and review corpus.

The tables are small curated stand-ins for the public datasets one would
normally pull from: a word-frequency lexicon (segmenter), toneless pinyin
(homophones), one-level glyph decompositions (morphonyms), sememe
annotations (synonyms), a stopword list and static word embeddings
(sentence encoder). The corpus is a synthetic shopping-review sentiment
set built from templates.

Usage: python3 scripts/gen_demo_data.py [outdir]
"""

import math
import random
import zlib
import sys
from pathlib import Path

SEED = 20240817

# ---------------------------------------------------------------------------
# pinyin: toneless syllable -> characters

PINYIN = {
    "hao": "好号浩毫耗",
    "ma": "马吗妈码麻骂",
    "shi": "是事市式十时识实世",
    "da": "大打达",
    "bang": "棒帮邦磅",
    "cha": "差查茶插",
    "lan": "烂蓝懒栏拦",
    "mei": "美每梅媒霉",
    "kuai": "快块筷",
    "man": "慢满漫馒",
    "gao": "高糕告搞",
    "di": "低底地帝递",
    "hua": "话花华化划",
    "pin": "品拼贫",
    "zhi": "质知直纸值指",
    "liang": "量良亮凉",
    "jia": "价家加假驾",
    "ge": "格哥歌个",
    "pian": "骗片篇偏",
    "song": "送松宋",
    "huo": "货火活",
    "wu": "物五屋误雾",
    "liu": "流六留",
    "deng": "等灯登",
    "dian": "店点电垫",
    "fu": "服福付复符",
    "zhuang": "装壮庄",
    "xin": "新心信欣芯",
    "jiu": "旧九久酒",
    "ying": "硬影应赢营",
    "ruan": "软阮",
    "bao": "包报宝抱饱",
    "su": "速素诉宿塑",
    "du": "度读肚",
    "wen": "稳文问温纹",
    "ding": "定顶订钉",
    "yi": "意一衣易医艺",
    "yong": "用永勇",
    "hen": "很狠恨",
    "fei": "非飞费肥废",
    "chang": "常长场唱",
    "jian": "件见建间健剑",
    "zuo": "做作坐左",
    "mai": "买卖麦",
    "shou": "收手首受售",
    "huan": "换环欢缓",
    "tui": "退推腿",
    "kuan": "款宽",
    "zhen": "真针阵镇",
    "jing": "惊精经京静睛",
    "xi": "喜西洗细席",
    "huai": "坏怀",
    "zang": "脏葬",
    "po": "破坡婆迫",
    "lou": "漏楼搂",
    "que": "缺确却",
    "shao": "少烧勺绍",
    "duo": "多朵夺",
    "zhou": "周州粥",
    "ci": "次词此刺",
    "yue": "月越悦阅",
    "tian": "天甜田添",
    "nian": "年念粘",
    "yan": "颜严盐演眼",
    "se": "色涩",
    "xiang": "香想相像响箱",
    "wei": "味为位未围",
    "nong": "浓农弄",
    "dan": "淡单蛋但",
    "xian": "鲜先线现咸",
    "gan": "干感敢赶",
    "jue": "觉决绝",
    "de": "的得德",
    "le": "了乐",
    "he": "和河喝盒",
    "zai": "在再载",
    "you": "有又右油优",
    "zhe": "这着折",
    "na": "那拿哪",
    "bu": "不布步部",
    "chao": "超吵炒抄",
    "zhu": "住主猪助注",
    "qi": "期气七齐奇",
    "guo": "过国果锅",
    "hou": "后厚候猴",
    "hui": "回会灰悔",
    "sun": "损笋孙",
    "ka": "卡咖",
    "dun": "顿盾吨",
    "mo": "模磨摸膜",
    "hu": "糊胡湖壶",
    "keng": "坑铿",
    "tao": "套淘桃逃",
    "ping": "屏平评瓶",
    "mu": "幕木目母",
    "chi": "吃迟尺池",
    "kan": "看刊砍",
    "nan": "难南男",
    "yi2": "宜移疑",
    "pang": "旁胖庞",
    "zao": "糟早造燥",
    "cu": "粗醋促",
    "ang": "昂",
    "gui": "贵鬼柜归",
    "pian2": "便",
    "tuo": "拖托脱",
    "kong": "空控孔",
    "zhuan": "转专砖赚",
    "shang": "商上伤赏",
    "ke": "客可刻课壳",
    "ji": "机级及极急寄",
    "nai": "耐奈",
    "dong": "东动冬懂",
    "xie": "鞋写谢些斜",
    "fang": "方房防放",
    "bian": "便边编变遍",
    "tie": "贴铁帖",
}

# ---------------------------------------------------------------------------
# glyph decomposition: character -> components (one level)

COMPONENTS = {
    # 马 family
    "马": "马", "妈": "女 马", "吗": "口 马", "码": "石 马", "骂": "口口 马",
    # 女 family
    "好": "女 子", "如": "女 口", "她": "女 也",
    # 每 family
    "每": "每", "梅": "木 每", "媒": "女 某", "霉": "雨 每", "海": "氵 每",
    # 曼 family
    "慢": "忄 曼", "漫": "氵 曼", "馒": "饣 曼",
    # 兰 family
    "烂": "火 兰", "拦": "扌 兰", "栏": "木 兰", "蓝": "艹 监",
    # 艮 family
    "很": "彳 艮", "狠": "犭 艮", "恨": "忄 艮", "跟": "足 艮", "根": "木 艮", "银": "钅 艮",
    # 青 family
    "精": "米 青", "清": "氵 青", "请": "讠 青", "情": "忄 青", "晴": "日 青", "睛": "目 青", "静": "青 争",
    # 包 family
    "包": "包", "抱": "扌 包", "饱": "饣 包", "跑": "足 包", "泡": "氵 包", "炮": "火 包",
    # 相 family
    "相": "木 目", "想": "相 心", "箱": "竹 相", "响": "口 向", "香": "禾 日",
    # 扁 family
    "骗": "马 扁", "偏": "亻 扁", "篇": "竹 扁", "编": "纟 扁",
    # misc phonetic/semantic families
    "差": "羊 工", "着": "羊 目", "美": "羊 大", "盖": "羊 皿",
    "快": "忄 夬", "块": "土 夬", "筷": "竹 夬", "决": "冫 夬", "缺": "缶 夬",
    "棒": "木 奉", "捧": "扌 奉",
    "糕": "米 羔", "烧": "火 尧", "浇": "氵 尧",
    "高": "高", "搞": "扌 高", "稿": "禾 高",
    "低": "亻 氐", "底": "广 氐",
    "货": "化 贝", "贵": "中 贝", "费": "弗 贝", "质": "斤 贝", "贴": "贝 占", "购": "贝 勾",
    "价": "亻 介", "件": "亻 牛", "位": "亻 立", "便": "亻 更", "值": "亻 直", "优": "亻 尤",
    "伤": "亻 力", "候": "亻 侯", "假": "亻 叚",
    "送": "辶 关", "退": "辶 艮", "递": "辶 弟", "速": "辶 束", "逃": "辶 兆", "迟": "辶 尺",
    "过": "辶 寸", "达": "辶 大", "还": "辶 不", "边": "辶 力",
    "物": "牛 勿", "特": "牛 寺",
    "流": "氵 㐬", "满": "氵 两", "湖": "氵 胡", "洗": "氵 先", "温": "氵 昷", "活": "氵 舌",
    "涩": "氵 刃", "淡": "氵 炎", "深": "氵 罙", "演": "氵 寅", "滑": "氵 骨",
    "电": "电", "屏": "尸 并", "幕": "莫 巾", "模": "木 莫", "摸": "扌 莫", "膜": "月 莫", "糊": "米 胡",
    "服": "月 卩", "期": "其 月", "朋": "月 月", "胖": "月 半",
    "装": "壮 衣", "壮": "丬 士", "庄": "广 土",
    "新": "亲 斤", "欣": "斤 欠", "断": "米 斤", "近": "辶 斤",
    "旧": "丨 日", "时": "日 寸", "晒": "日 西", "早": "日 十", "量": "日 里", "景": "日 京",
    "硬": "石 更", "破": "石 皮", "砍": "石 欠", "确": "石 角",
    "软": "车 欠", "轻": "车 圣", "转": "车 专", "载": "车 戈",
    "坏": "土 不", "坡": "土 皮", "坑": "土 亢", "垫": "执 土", "脏": "月 庄",
    "波": "氵 皮", "皮": "皮", "疲": "疒 皮", "被": "衤 皮",
    "漏": "氵 屚", "楼": "木 娄", "搂": "扌 娄",
    "惊": "忄 京", "京": "京", "凉": "冫 京", "就": "京 尤",
    "喜": "士 口", "嘉": "吉 力",
    "欢": "又 欠", "吹": "口 欠", "款": "士 欠",
    "粗": "米 且", "组": "纟 且", "糙": "米 造",
    "细": "纟 田", "线": "纟 戋", "纸": "纟 氏", "经": "纟 圣", "给": "纟 合",
    "颜": "彦 页", "顿": "屯 页", "顶": "丁 页", "预": "予 页", "烦": "火 页",
    "色": "色", "艳": "丰 色",
    "鲜": "鱼 羊", "鱼": "鱼",
    "甜": "舌 甘", "舔": "舌 忝", "话": "讠 舌",
    "咸": "口 戌", "味": "口 未", "吃": "口 乞", "吵": "口 少", "唱": "口 昌", "喝": "口 曷",
    "响2": "口 向", "问": "门 口", "间": "门 日", "闷": "门 心",
    "浓": "氵 农", "农": "农",
    "意": "音 心", "念": "今 心", "感": "咸 心", "想2": "相 心", "悔": "忄 每", "怀": "忄 不",
    "忙": "忄 亡", "怕": "忄 白", "懒": "忄 赖",
    "干": "干", "赶": "走 干", "汗": "氵 干", "刊": "干 刂",
    "觉": "见 学", "见": "见", "现": "王 见", "观": "又 见",
    "错": "钅 昔", "钱": "钅 戋", "针": "钅 十", "钉": "钅 丁", "镇": "钅 真",
    "真": "真", "慎": "忄 真",
    "难": "又 隹", "推": "扌 隹", "准": "冫 隹", "堆": "土 隹", "售": "隹 口",
    "收": "丩 攵", "放": "方 攵", "效": "交 攵", "敢": "耳 攵",
    "换": "扌 奂", "拖": "扌 也", "拿": "合 手", "打": "扌 丁", "抄": "扌 少", "插": "扌 臿",
    "托": "扌 乇", "拼": "扌 并", "指": "扌 旨", "搞2": "扌 高",
    "买": "头 乛", "卖": "十 买", "实": "宀 头",
    "亮": "亠 几", "壳": "士 几", "完": "宀 元", "宽": "宀 见", "宜": "宀 且", "客": "宀 各",
    "宝": "宀 玉", "定": "宀 正", "宿": "宀 佰", "察": "宀 祭",
    "糟": "米 曹", "槽": "木 曹",
    "燥": "火 喿", "操": "扌 喿", "躁": "足 喿",
    "卡": "上 下", "咖": "口 加", "加": "力 口", "驾": "加 马",
    "贫": "分 贝", "盆": "分 皿", "粉": "米 分",
    "超": "走 召", "越": "走 戉", "起": "走 己",
    "商": "亠 冏", "摘": "扌 啇", "适": "辶 舌",
    "机": "木 几", "极": "木 及", "格": "木 各", "柜": "木 巨", "板": "木 反", "松": "木 公",
    "桃": "木 兆", "朵": "几 木", "架": "加 木",
    "级": "纟 及", "急": "刍 心", "稳": "禾 急",
    "耐": "而 寸", "寿": "寿", "套": "大 長",
    "鞋": "革 圭", "街": "行 圭", "挂": "扌 圭",
    "舒": "舍 予", "服2": "月 卩",
    "闪": "门 人", "队": "阝 人",
    "雾": "雨 务", "雷": "雨 田", "需": "雨 而", "震": "雨 辰",
    "营": "艹 吕", "苦": "艹 古", "荐": "艹 存", "薄": "艹 溥", "菜": "艹 采", "药": "艹 约",
    "蛋": "疋 虫", "虽": "口 虫", "强": "弓 虫",
    "单": "单", "弹": "弓 单", "蝉": "虫 单",
    "损": "扌 员", "员": "口 贝", "圆": "囗 员",
    "赚": "贝 兼", "谦": "讠 兼",
    "评": "讠 平", "平": "平", "苹": "艹 平", "瓶": "并 瓦",
    "识": "讠 只", "词": "讠 司", "诉": "讠 斥", "设": "讠 殳", "计": "讠 十", "订": "讠 丁",
    "误": "讠 吴", "谢": "讠 射",
    "度": "广 又", "席": "广 巾", "店": "广 占", "府": "广 付", "康": "广 隶",
    "点": "占 灬", "热": "执 灬", "照": "昭 灬", "黑": "黑",
    "灰": "火 彐", "灯": "火 丁", "烤": "火 考", "炒": "火 少", "炸": "火 乍",
    "退2": "辶 艮", "腿": "月 退",
    "周": "周", "调": "讠 周", "雕": "周 隹", "州": "州", "粥": "弓 米",
    "次": "冫 欠", "冷": "冫 令", "冻": "冫 东",
    "此": "止 匕", "些": "此 二", "紫": "此 糸",
    "刺": "朿 刂", "别": "另 刂", "到": "至 刂", "划": "戈 刂", "刻": "亥 刂",
    "永": "永", "泳": "氵 永", "勇": "甬 力", "通": "辶 甬", "痛": "疒 甬",
    "用": "用", "拥": "扌 用",
    "费2": "弗 贝", "佛": "亻 弗",
    "废": "广 发", "发": "发",
    "常": "尚 巾", "堂": "尚 土", "躺": "身 尚", "赏": "尚 贝",
    "长": "长", "张": "弓 长", "帐": "巾 长", "账": "贝 长",
    "场": "土 另", "汤": "氵 另", "烫": "汤 火",
    "唱2": "口 昌", "晶": "日日 日",
    "健": "亻 建", "建": "廴 聿", "键": "钅 建",
    "做": "亻 故", "故": "古 攵", "作": "亻 乍", "昨": "日 乍",
    "坐": "人人 土", "座": "广 坐",
    "左": "工 彐", "右": "口 彐", "有": "月 彐",
    "又": "又", "双": "又 又", "友": "彐 又",
    "油": "氵 由", "邮": "由 阝", "抽": "扌 由",
    "折": "扌 斤", "哲": "折 口",
    "布": "巾 彐", "步": "止 少", "部": "立 阝", "陪": "阝 咅",
    "猪": "犭 者", "都": "者 阝", "煮": "者 灬",
    "住": "亻 主", "主": "主", "注": "氵 主", "柱": "木 主", "助": "且 力",
    "奇": "大 可", "骑": "马 奇", "寄": "宀 奇", "椅": "木 奇",
    "齐": "齐", "挤": "扌 齐", "济": "氵 齐",
    "气": "气", "汽": "氵 气",
    "果": "果", "课": "讠 果", "棵": "木 果", "颗": "果 页", "锅": "钅 呙",
    "厚": "厂 孔", "原": "厂 白", "厉": "厂 万",
    "回": "囗 口", "会": "人 云", "灰2": "火 彐",
    "孙": "子 小", "笋": "竹 尹",
    "吨": "口 屯", "盾": "盾", "炖": "火 屯",
    "磨": "麻 石", "麻": "麻", "摩": "麻 手",
    "壶": "士 业", "胡": "古 月", "古": "古", "苦2": "艹 古", "估": "亻 古", "固": "囗 古",
    "铿": "钅 坚", "淘": "氵 匋", "陶": "阝 匋",
    "屏2": "尸 并", "并": "并", "饼": "饣 并",
    "幕2": "莫 巾", "目": "目", "母": "母", "木": "木",
    "池": "氵 也", "地": "土 也", "他": "亻 也", "也": "也",
    "看": "手 目", "盲": "亡 目", "盯": "目 丁",
    "南": "南", "男": "田 力", "喃": "口 南",
    "移": "禾 多", "疑": "疑", "多": "夕 夕", "夜": "亠 夜", "夺": "大 寸",
    "旁": "亠 方", "方": "方", "房": "户 方", "防": "阝 方", "访": "讠 方", "放2": "方 攵",
    "庞": "广 龙", "笼": "竹 龙",
    "造": "辶 告", "告": "告", "靠": "告 非",
    "醋": "酉 昔", "酒": "氵 酉", "配": "酉 己",
    "促": "亻 足", "足": "足", "捉": "扌 足",
    "昂": "日 卬", "迎": "辶 卬",
    "鬼": "鬼", "愧": "忄 鬼", "魔": "麻 鬼",
    "归": "彐 丨", "刷": "尸 刂",
    "脱": "月 兑", "说": "讠 兑", "税": "禾 兑", "悦": "忄 兑", "阅": "门 兑", "锐": "钅 兑",
    "空": "穴 工", "控": "扌 空", "孔": "子 乚",
    "专": "专", "砖": "石 专",
    "上": "上", "尚": "尚",
    "可": "丁 口", "河": "氵 可", "何": "亻 可", "哥": "可 可", "歌": "哥 欠",
    "刀": "刀", "切": "七 刀", "分": "八 刀",
    "东": "东", "冬": "夂 冫", "动": "云 力", "懂": "忄 董",
    "写": "冖 与", "些2": "此 二", "斜": "余 斗",
    "贝": "贝", "见2": "见",
    "防2": "阝 方", "放3": "方 攵",
    "变": "亦 又", "遍": "辶 扁", "边2": "辶 力",
    "铁": "钅 失", "失": "失", "跌": "足 失",
    "帖": "巾 占", "占": "占", "站": "立 占", "粘": "米 占", "战": "占 戈",
    "批": "扌 比", "比": "比", "毕": "比 十",
    "良": "良", "粮": "米 良", "浪": "氵 良", "郎": "良 阝",
    "号": "口 丂", "浩": "氵 告", "毫": "亠 毛", "耗": "耒 毛", "毛": "毛",
    "十": "十", "什": "亻 十", "汁": "氵 十",
    "世": "世", "叶": "口 十",
    "市": "亠 巾", "式": "式", "试": "讠 式",
    "事": "事", "是": "日 正",
    "大": "大", "太": "大 丶", "天": "大 一", "田": "田", "添": "氵 忝",
    "邦": "丰 阝", "帮": "邦 巾", "磅": "石 旁",
    "查": "木 旦", "茶": "艹 木", "搭": "扌 荅",
    "留": "留", "榴": "木 留", "六": "六",
    "等": "竹 寺", "待": "彳 寺", "诗": "讠 寺", "寺": "寺",
    "登": "癶 豆", "豆": "豆", "短": "矢 豆",
    "付": "亻 寸", "附": "阝 付", "符": "竹 付", "府2": "广 付",
    "复": "复", "福": "礻 畐", "副": "畐 刂", "幅": "巾 畐",
    "芯": "艹 心", "心": "心", "信": "亻 言",
    "九": "九", "久": "久", "究": "穴 九",
    "影": "景 彡", "应": "广 心", "赢": "赢",
    "阮": "阝 元", "元": "元", "院": "阝 完", "远": "辶 元",
    "报": "扌 卩", "抱2": "扌 包",
    "素": "素", "塑": "朔 土", "宿2": "宀 佰",
    "读": "讠 卖", "续": "纟 卖", "肚": "月 土",
    "文": "文", "纹": "纟 文", "蚊": "虫 文", "这": "辶 文",
    "镇2": "钅 真", "阵": "阝 车",
    "经2": "纟 圣", "轻2": "车 圣",
    "西": "西", "晒2": "日 西", "洒": "氵 西",
    "怀2": "忄 不", "不": "不", "否": "不 口", "杯": "木 不",
    "葬": "艹 死", "死": "歹 匕",
    "婆": "波 女", "波2": "氵 皮", "迫": "辶 白", "白": "白", "拍": "扌 白", "柏": "木 白",
    "勺": "勺", "约": "纟 勺", "的": "白 勺", "钓": "钅 勺",
    "绍": "纟 召", "召": "刀 口", "招": "扌 召", "昭": "日 召",
    "少": "少", "沙": "氵 少", "秒": "禾 少", "妙": "女 少",
    "越2": "走 戉", "月": "月",
    "严": "严", "盐": "土 皿", "演2": "氵 寅", "眼": "目 艮",
    "彦": "彦", "颜2": "彦 页",
    "像": "亻 象", "象": "象", "橡": "木 象",
    "为": "为", "围": "囗 韦", "伟": "亻 韦", "违": "辶 韦", "未": "未", "位2": "亻 立",
    "弄": "王 廾", "开": "开", "形": "开 彡",
    "但": "亻 旦", "旦": "日 一", "担": "扌 旦", "胆": "月 旦",
    "先": "先", "现2": "王 见", "咸2": "口 戌",
    "敢2": "耳 攵", "耳": "耳", "取": "耳 又", "聊": "耳 卯",
    "绝": "纟 色", "决2": "冫 夬",
    "得": "彳 㝵", "德": "彳 惪", "律": "彳 聿", "往": "彳 主",
    "乐": "乐", "了": "了",
    "和": "禾 口", "喝2": "口 曷", "渴": "氵 曷", "盒": "合 皿", "合": "合", "哈": "口 合", "拾": "扌 合",
    "在": "才 土", "再": "再", "载2": "车 戈",
    "飞": "飞", "非": "非", "肥": "月 巴", "把": "扌 巴", "吧": "口 巴", "爸": "父 巴", "巴": "巴",
    "而": "而", "需2": "雨 而",
    "哪": "口 那", "那": "那", "拿2": "合 手",
    "五": "五", "吾": "五 口", "语": "讠 吾", "屋": "尸 至", "至": "至", "到2": "至 刂",
    "国": "囗 玉", "玉": "王 丶", "王": "王",
    "火": "火", "伙": "亻 火", "秋": "禾 火",
    "华": "化 十", "化": "亻 匕", "花": "艹 化",
    "低2": "亻 氐", "底2": "广 氐", "氐": "氏 一", "氏": "氏",
    "帝": "亠 巾", "递2": "辶 弟", "弟": "弟", "第": "竹 弟",
}

# ---------------------------------------------------------------------------
# lexicon words with frequencies and semantic groups
# (word, freq, group, sememes)

POSITIVE = [
    ("好", 8000, "good quality"),
    ("很好", 3000, "good quality degree"),
    ("不错", 2500, "good quality"),
    ("满意", 2600, "good feeling"),
    ("喜欢", 2400, "good feeling"),
    ("棒", 1800, "good quality"),
    ("优秀", 900, "good quality degree"),
    ("漂亮", 1500, "good appearance"),
    ("好看", 1400, "good appearance"),
    ("好用", 1300, "good function"),
    ("好吃", 1350, "good taste"),
    ("新鲜", 1200, "good fresh"),
    ("舒服", 1250, "good feeling body"),
    ("精美", 700, "good appearance fine"),
    ("实惠", 950, "good price"),
    ("划算", 900, "good price"),
    ("便宜", 1600, "good price"),
    ("耐用", 850, "good durable"),
    ("流畅", 800, "good function smooth"),
    ("清晰", 820, "good appearance clear"),
    ("惊喜", 750, "good feeling surprise"),
    ("完美", 880, "good quality degree"),
    ("推荐", 1100, "good advise"),
    ("给力", 600, "good quality"),
    ("快", 2200, "good speed"),
    ("方便", 1450, "good convenient"),
    ("及时", 780, "good speed"),
    ("超值", 720, "good price"),
    ("好评", 1050, "good advise"),
    ("点赞", 560, "good advise"),
]

NEGATIVE = [
    ("差", 4000, "bad quality"),
    ("很差", 1500, "bad quality degree"),
    ("失望", 1900, "bad feeling"),
    ("讨厌", 1000, "bad feeling"),
    ("垃圾", 1400, "bad quality thing"),
    ("糟糕", 1100, "bad quality"),
    ("烂", 1300, "bad quality"),
    ("难看", 900, "bad appearance"),
    ("难用", 850, "bad function"),
    ("难吃", 950, "bad taste"),
    ("过期", 600, "bad fresh"),
    ("难受", 880, "bad feeling body"),
    ("粗糙", 760, "bad appearance fine"),
    ("昂贵", 500, "bad price"),
    ("坑", 820, "bad price cheat"),
    ("后悔", 980, "bad feeling"),
    ("破损", 700, "bad broken"),
    ("破", 900, "bad broken"),
    ("坏", 1700, "bad broken quality"),
    ("退货", 1200, "bad return"),
    ("卡顿", 650, "bad function smooth"),
    ("模糊", 640, "bad appearance clear"),
    ("慢", 1800, "bad speed"),
    ("麻烦", 1150, "bad convenient"),
    ("拖延", 480, "bad speed"),
    ("差评", 860, "bad advise"),
    ("骗人", 560, "bad cheat"),
    ("漏发", 420, "bad broken missing"),
    ("掉色", 460, "bad appearance broken"),
    ("异味", 440, "bad smell"),
]

NOUNS = [
    ("手机", 3000, "tool communicate"),
    ("电脑", 2200, "tool compute"),
    ("衣服", 2600, "clothing"),
    ("鞋子", 1800, "clothing foot"),
    ("裤子", 1300, "clothing"),
    ("质量", 3200, "attribute quality"),
    ("物流", 2400, "transport"),
    ("快递", 2300, "transport"),
    ("包装", 2000, "wrap"),
    ("商家", 1700, "seller"),
    ("客服", 1900, "seller service"),
    ("价格", 2500, "attribute price"),
    ("屏幕", 1400, "tool part display"),
    ("电池", 1300, "tool part power"),
    ("颜色", 1900, "attribute appearance"),
    ("味道", 1700, "attribute taste"),
    ("面料", 1100, "clothing material"),
    ("尺寸", 1200, "attribute size"),
    ("速度", 1600, "attribute speed"),
    ("服务", 2100, "seller service"),
    ("态度", 1500, "seller service attitude"),
    ("东西", 2800, "thing"),
    ("宝贝", 1600, "thing"),
    ("产品", 1800, "thing"),
    ("零食", 900, "food"),
    ("水果", 1100, "food fresh"),
    ("牛奶", 800, "food drink"),
    ("茶叶", 700, "food drink"),
    ("键盘", 600, "tool part input"),
    ("耳机", 950, "tool part sound"),
    ("音质", 640, "attribute sound"),
    ("做工", 1000, "attribute workmanship"),
    ("款式", 980, "attribute appearance style"),
    ("功能", 1050, "attribute function"),
    ("效果", 1150, "attribute function"),
    ("性价比", 860, "attribute price quality"),
    ("售后", 840, "seller service after"),
    ("发货", 1350, "transport send"),
    ("送货", 760, "transport send"),
    ("材质", 720, "attribute material"),
]

VERBS = [
    ("收到", 2000, "receive"),
    ("感觉", 1800, "feel"),
    ("觉得", 1900, "feel"),
    ("穿", 1300, "wear"),
    ("用", 2500, "use"),
    ("买", 2900, "buy"),
    ("试", 900, "try"),
    ("打开", 1000, "open"),
    ("使用", 1200, "use"),
    ("发现", 950, "find"),
]

ADVERBS = [
    ("真的", 1700, "degree true"),
    ("非常", 2400, "degree high"),
    ("特别", 1600, "degree high"),
    ("比较", 1400, "degree mid"),
    ("有点", 1500, "degree low"),
    ("确实", 800, "degree true"),
    ("相当", 600, "degree high"),
]

STOPWORDS = [
    ("的", 20000), ("了", 15000), ("我", 12000), ("你", 6000), ("他", 5000),
    ("是", 11000), ("很", 9000), ("都", 5000), ("就", 5500), ("也", 5200),
    ("和", 4800), ("在", 6400), ("这", 7000), ("那", 4200), ("但", 3800),
    ("但是", 3600), ("虽然", 2400), ("而且", 2000), ("还", 4300), ("个", 8000),
    ("一", 9000), ("次", 3000), ("天", 2800), ("没", 4000), ("不", 9500),
]

FILLERS = [
    ("今天", 1500), ("昨天", 1100), ("第二", 700), ("已经", 1400),
    ("以后", 900), ("一下", 1200), ("朋友", 1000), ("家人", 700),
    ("店家", 800), ("半天", 400), ("一周", 450), ("现在", 1300),
]


def build_lexicon():
    lex = {}
    groups = {}
    for word, freq, sem in POSITIVE + NEGATIVE + NOUNS + VERBS + ADVERBS:
        lex[word] = freq
        groups[word] = sem.split()
    for word, freq in STOPWORDS + FILLERS:
        lex[word] = freq
    return lex, groups


def write_tsv(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def unit(vec):
    n = math.sqrt(sum(v * v for v in vec))
    return [v / n for v in vec] if n > 0 else vec


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    outdir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    lex, groups = build_lexicon()

    # lexicon.tsv
    write_tsv(outdir / "lexicon.tsv",
              ["# word\tfrequency"] + [f"{w}\t{f}" for w, f in lex.items()])

    # pinyin.tsv
    pinyin_lines = ["# char\ttoneless syllable"]
    for syl, chars in PINYIN.items():
        s = syl.rstrip("0123456789")
        for ch in chars:
            pinyin_lines.append(f"{ch}\t{s}")
    write_tsv(outdir / "pinyin.tsv", pinyin_lines)

    # components.tsv (strip the numeric disambiguation suffixes)
    comp_lines = ["# char\tcomponent"]
    seen = set()
    for ch, comps in COMPONENTS.items():
        ch = ch.rstrip("0123456789")
        for comp in comps.split():
            if (ch, comp) not in seen:
                seen.add((ch, comp))
                comp_lines.append(f"{ch}\t{comp}")
    write_tsv(outdir / "components.tsv", comp_lines)

    # sememes.tsv — sentiment descriptors are scoped by polarity so that
    # sememe overlap only links near-synonyms, never antonym pairs
    sem_lines = ["# word\tsememe"]
    for word, sems in groups.items():
        polarity = sems[0] if sems[0] in ("good", "bad") else None
        for s in sems:
            if polarity and s != polarity:
                s = f"{polarity}.{s}"
            sem_lines.append(f"{word}\t{s}")
    write_tsv(outdir / "sememes.tsv", sem_lines)

    # stopwords.tsv
    write_tsv(outdir / "stopwords.tsv",
              ["# stopwords"] + [w for w, _ in STOPWORDS])

    # embeddings.tsv: group direction + small word-specific noise
    dim = 16
    axis = {}

    def axis_vec(name):
        if name not in axis:
            r = random.Random(zlib.crc32(name.encode()))
            axis[name] = unit([r.gauss(0, 1) for _ in range(dim)])
        return axis[name]

    sentiment_words = {w for w, _, _ in POSITIVE + NEGATIVE}
    emb_lines = ["# static word embeddings", str(dim)]
    for word in lex:
        sems = groups.get(word, ["filler"])
        base = [0.0] * dim
        for s in sems:
            av = axis_vec(s)
            # the polarity axis dominates, keeping same-polarity synonyms
            # close together relative to any cross-class substitution
            weight = 2.5 if s in ("good", "bad") else 1.0
            for d in range(dim):
                base[d] += weight * av[d]
        r = random.Random(zlib.crc32(word.encode()) ^ 0x9E3779B9)
        vec = unit([b + 0.25 * r.gauss(0, 1) for b in base])
        # Content words carry more embedding mass than function words, so
        # the sentence-level similarity check reacts when one is replaced.
        if word in sentiment_words:
            scale = 1.0
        elif word in groups:
            scale = 0.6
        else:
            scale = 0.3
        vec = [scale * v for v in vec]
        emb_lines.append(word + "\t" + " ".join(f"{v:.6f}" for v in vec))
    write_tsv(outdir / "embeddings.tsv", emb_lines)

    # ------------------------------------------------------------------
    # corpus: template-generated shopping reviews
    pos_words = [w for w, _, _ in POSITIVE]
    neg_words = [w for w, _, _ in NEGATIVE]
    nouns = [w for w, _, _ in NOUNS]
    advs = [w for w, _, _ in ADVERBS]
    fillers = [w for w, _ in FILLERS]

    def sample_review(label):
        main_pool = pos_words if label == "pos" else neg_words
        off_pool = neg_words if label == "pos" else pos_words
        n1, n2 = rng.sample(nouns, 2)
        s1 = rng.choice(main_pool)
        s2 = rng.choice(main_pool)
        adv = rng.choice(advs)
        filler = rng.choice(fillers)
        style = rng.randrange(6)
        if style == 0:
            return f"{filler}收到{n1}，{n2}{adv}{s1}，我觉得{s2}"
        if style == 1:
            return f"这个{n1}的{n2}很{s1}，真的{s2}"
        if style == 2:
            off = rng.choice(off_pool)
            return f"虽然{n2}有点{off}，但是{n1}{adv}{s1}"
        if style == 3:
            return f"买了{n1}，用了一下感觉{s1}，{n2}也{s2}"
        if style == 4:
            return f"{n1}{adv}{s1}，{filler}还会买"if label == "pos" else \
                   f"{n1}{adv}{s1}，{filler}不会再买"
        off = rng.choice(off_pool)
        return f"{n1}的{n2}{s1}，不过{off}是真的"

    def gen(n):
        rows = []
        for i in range(n):
            label = "pos" if i % 2 == 0 else "neg"
            rows.append(f"{label}\t{sample_review(label)}")
        return rows

    write_tsv(outdir / "corpus_train.tsv", ["# label\ttext"] + gen(2400))
    write_tsv(outdir / "corpus_eval.tsv", ["# label\ttext"] + gen(600))
    print(f"wrote demo tables to {outdir}/")


if __name__ == "__main__":
    main()
