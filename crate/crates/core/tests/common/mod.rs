#![allow(dead_code)]

pub mod bruhat;
pub mod freudenthal;
