//! Scaling, nesting and two-track fusion of words.
use langlab::corpus::CorpusLanguage;
use langlab::words::{nest_l2, scale, unzip_tracks, zip_tracks, TrackedWord};
use langlab::{word, Membership};

fn main() -> langlab::Result<()> {
    let w = word![1, 2, 1, 1];
    println!("3·{w} = {}", scale(&w, 3)?);

    for seed in [word![1], word![1, 2], word![2, 2, 1]] {
        let z = nest_l2(&seed)?;
        println!("nest({seed}) = {z}  in L2: {}", CorpusLanguage::L2.contains(&z));
    }

    let tracks = zip_tracks(&word![0, 1, 1], &word![1, 0, 1])?;
    let fused = tracks.fuse()?;
    println!("fused letters: {fused}");
    let (top, bottom) = unzip_tracks(&TrackedWord::from_fused(&fused));
    println!("unzipped: top {top}, bottom {bottom}");
    Ok(())
}
