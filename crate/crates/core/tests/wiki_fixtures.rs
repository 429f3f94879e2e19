use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use cantomine::wiki::{
    clean_wikitext, load_langlinks, pair_articles, parse_dump, CleanArticle, LangLink, LinkFormat,
    LinkOptions, PairOptions, RawPage,
};

fn fixture(name: &str) -> BufReader<File> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    BufReader::new(File::open(path).unwrap())
}

fn pages(name: &str) -> Vec<RawPage> {
    parse_dump(fixture(name)).collect::<Result<_, _>>().unwrap()
}

#[test]
fn three_page_dump() {
    let p = pages("three_pages.xml");
    assert_eq!(p.len(), 3);
    assert_eq!(p.iter().filter(|p| p.is_redirect).count(), 1);
    assert!(p[1].is_redirect);
    assert_eq!(
        p.iter()
            .map(|p| (p.page_id, p.title.as_str()))
            .collect::<Vec<_>>(),
        vec![(1, "香港"), (2, "HK"), (3, "九龍")]
    );

    let articles: Vec<_> = p
        .iter()
        .filter_map(|p| clean_wikitext(p, "zh-yue"))
        .collect();
    assert_eq!(articles.len(), 2);
    assert_eq!(articles[0].paragraphs, vec!["香港係一個城市。"]);
    assert_eq!(articles[1].paragraphs, vec!["「香港特區」好靚"]);
}

#[test]
fn latest_revision_text() {
    let p = pages("two_revisions.xml");
    assert_eq!(p.len(), 1);
    assert_eq!(p[0].wikitext, "珠江係中國南方最大嘅河系。");
}

#[test]
fn two_line_links() {
    let loaded = load_langlinks(
        fixture("links_2line.tsv"),
        LinkFormat::Tsv,
        &LinkOptions::default(),
    )
    .unwrap();
    assert_eq!(
        loaded.links,
        vec![
            LangLink {
                from_title: "香港".into(),
                to_title: "香港".into()
            },
            LangLink {
                from_title: "廣州".into(),
                to_title: "广州".into()
            },
        ]
    );
    assert_eq!(loaded.malformed, 0);
}

#[test]
fn one_link_to_missing_source() {
    let art = |lang: &str, title: &str| CleanArticle {
        lang: lang.into(),
        id: None,
        title: title.into(),
        paragraphs: vec!["x。".into()],
    };
    let src = vec![art("zh", "香港"), art("zh", "九龙")];
    let tgt = vec![
        art("zh-yue", "香港"),
        art("zh-yue", "九龍"),
        art("zh-yue", "廣州"),
    ];
    let links = vec![
        LangLink {
            from_title: "香港".into(),
            to_title: "香港".into(),
        },
        LangLink {
            from_title: "九龍".into(),
            to_title: "九龙".into(),
        },
        LangLink {
            from_title: "廣州".into(),
            to_title: "广州".into(),
        },
    ];
    let pairing = pair_articles(&src, &tgt, &links, &PairOptions::default()).unwrap();
    assert_eq!(pairing.pairs.len(), 2);
    assert_eq!(pairing.unmatched, 1);
    let titles: Vec<_> = pairing.pairs.iter().map(|p| p.tgt.title.as_str()).collect();
    assert_eq!(titles, vec!["九龍", "香港"]);
}
